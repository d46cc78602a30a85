#include "phasefront/logging.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string_view>

namespace phasefront {

namespace {

LogLevel parse_level(const char* s) {
  if (s == nullptr) return LogLevel::Warn;
  const std::string_view v(s);
  if (v == "error") return LogLevel::Error;
  if (v == "info") return LogLevel::Info;
  if (v == "debug") return LogLevel::Debug;
  return LogLevel::Warn;
}

std::atomic<int>& threshold() {
  static std::atomic<int> t{static_cast<int>(parse_level(std::getenv("PHASEFRONT_LOG")))};
  return t;
}

const char* tag(LogLevel l) {
  switch (l) {
    case LogLevel::Error: return "error";
    case LogLevel::Warn: return "warn";
    case LogLevel::Info: return "info";
    case LogLevel::Debug: return "debug";
  }
  return "?";
}

}  // namespace

LogLevel log_threshold() { return static_cast<LogLevel>(threshold().load()); }

void set_log_threshold(LogLevel level) { threshold().store(static_cast<int>(level)); }

bool log_enabled(LogLevel level) {
  return static_cast<int>(level) <= threshold().load(std::memory_order_relaxed);
}

void log(LogLevel level, const std::string& msg) {
  if (!log_enabled(level)) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[phasefront " << tag(level) << "] " << msg << '\n';
}

}  // namespace phasefront
