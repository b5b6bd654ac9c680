#include "smilewing/cli/log.hpp"

#include <cstdlib>
#include <iostream>

namespace smilewing::cli {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("SMILEWING_LOG");
        if (!env) return LogLevel::Off;
        const std::string v(env);
        if (v == "debug") return LogLevel::Debug;
        if (v == "info") return LogLevel::Info;
        return LogLevel::Off;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << "[smilewing] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::cerr << "[smilewing:debug] " << msg << "\n";
}

} // namespace smilewing::cli
