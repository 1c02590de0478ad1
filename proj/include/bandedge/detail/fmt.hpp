#pragma once

#include <cstdio>
#include <string>

namespace bandedge::detail {

// Short human-readable rendering for error messages.
inline std::string g6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace bandedge::detail
