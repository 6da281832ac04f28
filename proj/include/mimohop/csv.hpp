#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace mimohop {

/// 17 significant digits, so CSV output round-trips every double.
inline std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace mimohop
