// Run report: one self-contained HTML document with embedded SVG plots
// tabulating the eigenvalue, steady-state statistics, fitted front rates
// against the predicted exponent, profile deviations per epsilon, and
// the barrier verification, each row judged against its threshold.  A
// machine-readable copy of the verdict rows lands in report.json.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "levyfront/config.hpp"
#include "levyfront/pipeline.hpp"

namespace levyfront {

struct ReportRow {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ReportSummary {
  std::vector<ReportRow> rows;
  std::filesystem::path document;  // the HTML file

  bool all_passed() const;
};

// Builds the report from the artifacts the manifest lists, writing
// report.html and report.json under the manifest's output directory.
// Stages that failed or were skipped appear as an explicit gap note;
// artifacts that are listed but missing on disk raise IoError naming
// the paths.
ReportSummary write_report(const ExperimentConfig& config, const RunManifest& manifest);

}  // namespace levyfront
