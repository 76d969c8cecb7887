#include "forge/log.hpp"

#include <cstdlib>
#include <cstring>

namespace forge {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* v = std::getenv("NEWTON_FORGE_LOG");
        if (v == nullptr) return LogLevel::Summary;
        if (std::strcmp(v, "quiet") == 0) return LogLevel::Quiet;
        if (std::strcmp(v, "trace") == 0) return LogLevel::Trace;
        return LogLevel::Summary;
    }();
    return level;
}

}  // namespace forge
