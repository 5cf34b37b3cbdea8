#pragma once

#include <cstdio>
#include <string>

namespace fpls {

/// Shortest locale-independent representation that still round-trips a
/// double exactly; used by every CSV writer so outputs are byte-stable.
inline void append_double(std::string& out, double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, static_cast<std::size_t>(n));
}

inline std::string format_double(double v) {
    std::string s;
    append_double(s, v);
    return s;
}

}  // namespace fpls
