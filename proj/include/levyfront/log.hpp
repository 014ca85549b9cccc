// Minimal leveled logging to stderr.  The level is read once from the
// LEVYFRONT_LOG environment variable ("error", "info", "debug"); default
// is "info".  Logging never touches stdout, which is reserved for data.
#pragma once

#include <sstream>
#include <string>

namespace levyfront {

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level();

void log_message(LogLevel level, const std::string& text);

namespace detail {

template <typename... Args>
std::string concat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

}  // namespace detail

template <typename... Args>
void log_error(const Args&... args) {
  log_message(LogLevel::error, detail::concat(args...));
}

template <typename... Args>
void log_info(const Args&... args) {
  if (log_level() >= LogLevel::info) log_message(LogLevel::info, detail::concat(args...));
}

template <typename... Args>
void log_debug(const Args&... args) {
  if (log_level() >= LogLevel::debug) log_message(LogLevel::debug, detail::concat(args...));
}

}  // namespace levyfront
