#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace nrlab {

// shortest round-trip decimal form, '.' separator
inline std::string fmt_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

}  // namespace nrlab
