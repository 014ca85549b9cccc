#include "levyfront/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace levyfront {

namespace {

LogLevel parse_level() {
  const char* env = std::getenv("LEVYFRONT_LOG");
  if (env == nullptr) return LogLevel::info;
  if (std::strcmp(env, "error") == 0) return LogLevel::error;
  if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
  return LogLevel::info;
}

const char* level_tag(LogLevel level) {
  switch (level) {
    case LogLevel::error:
      return "error";
    case LogLevel::debug:
      return "debug";
    default:
      return "info";
  }
}

std::mutex log_mutex;

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_level();
  return level;
}

void log_message(LogLevel level, const std::string& text) {
  std::lock_guard<std::mutex> lock(log_mutex);
  std::fprintf(stderr, "[levyfront:%s] %s\n", level_tag(level), text.c_str());
}

}  // namespace levyfront
