#pragma once

#include <string>

namespace smilewing::cli {

/// Verbosity from the SMILEWING_LOG environment variable: off | info | debug.
enum class LogLevel { Off = 0, Info = 1, Debug = 2 };

LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

} // namespace smilewing::cli
