#pragma once

#include <charconv>
#include <string>

namespace ncn {

// 17 significant digits round-trips every double.
inline std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace ncn
