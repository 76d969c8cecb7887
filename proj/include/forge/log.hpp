#pragma once

#include <cstdio>

namespace forge {

/// Verbosity, selected once per process from NEWTON_FORGE_LOG
/// (quiet | summary | trace; default summary).
enum class LogLevel { Quiet = 0, Summary = 1, Trace = 2 };

[[nodiscard]] LogLevel log_level();

[[nodiscard]] inline bool trace_enabled() { return log_level() >= LogLevel::Trace; }

template <typename... Args>
void trace(const char* fmt, Args... args) {
    if (trace_enabled()) {
        std::fprintf(stderr, fmt, args...);
        std::fputc('\n', stderr);
    }
}

}  // namespace forge
