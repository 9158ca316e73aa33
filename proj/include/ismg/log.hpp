/// @file log.hpp
/// Minimal stderr logging gated by the ISMG_LOG environment variable:
/// unset/0 = warnings only, 1 = info, 2 = debug.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace ismg::log {

inline int verbosity() {
    static const int v = [] {
        const char* e = std::getenv("ISMG_LOG");
        return e ? std::atoi(e) : 0;
    }();
    return v;
}

inline void emit(const char* tag, const std::string& msg) {
    std::fprintf(stderr, "[ismg:%s] %s\n", tag, msg.c_str());
}

inline void warn(const std::string& msg) { emit("warn", msg); }
inline void info(const std::string& msg) {
    if (verbosity() >= 1) emit("info", msg);
}
inline void debug(const std::string& msg) {
    if (verbosity() >= 2) emit("debug", msg);
}

}  // namespace ismg::log
