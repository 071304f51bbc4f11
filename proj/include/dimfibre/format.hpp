#pragma once

#include <charconv>
#include <string>

namespace dimfibre {

// Shortest decimal representation that round-trips the double exactly.
inline std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace dimfibre
