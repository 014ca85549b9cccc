// Text and file helpers: printf-style string building, full-precision
// float formatting for data files, FNV-1a content hashing, and a small
// CSV writer.  All numeric output goes through %.17g so that reruns of
// the same computation produce byte-identical artifacts.
#pragma once

#include <cstdarg>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace levyfront {

// printf into a std::string.
std::string strprintf(const char* format, ...) __attribute__((format(printf, 1, 2)));

// Shortest round-trip decimal form of a double.
std::string fmt17(double value);

// 64-bit FNV-1a hash of a byte string, and its fixed-width hex spelling.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

// Create a directory (and parents) if absent; throws IoError on failure.
void ensure_dir(const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Hex FNV-1a hash of a file's contents.
std::string file_checksum(const std::filesystem::path& path);

// A CSV file read back into memory: header names plus numeric rows.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Index of a named column; throws IoError when absent.
  std::size_t column(std::string_view name) const;
};

// Parse a CSV file written by CsvWriter (quoted or bare headers, numeric
// cells).  Throws IoError on malformed content.
CsvTable read_csv_file(const std::filesystem::path& path);

// Streaming CSV writer with a fixed column layout.  Cells are doubles
// rendered via fmt17; the header is written on construction.
class CsvWriter {
public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void write_row(const std::vector<double>& values);
  void close();

  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t column_count_;
};

}  // namespace levyfront
