#pragma once

#include <string>

namespace phasefront {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Threshold read once from PHASEFRONT_LOG (error|warn|info|debug); warn by
// default. Messages go to stderr.
LogLevel log_threshold();
void set_log_threshold(LogLevel level);
bool log_enabled(LogLevel level);
void log(LogLevel level, const std::string& msg);

}  // namespace phasefront
