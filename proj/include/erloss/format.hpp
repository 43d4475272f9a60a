#ifndef ERLOSS_FORMAT_HPP
#define ERLOSS_FORMAT_HPP

#include <charconv>
#include <string>

namespace erloss {

// Decimal, 17 significant digits, locale-independent.  Trailing zeros are
// trimmed by the general format, so integral values print as integers.
inline std::string format_number(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v,
                             std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

// Same, but JSON-safe: non-finite values become null.
inline std::string json_number(double v) {
    if (v != v || v > 1.7976931348623157e308 || v < -1.7976931348623157e308) {
        return "null";
    }
    return format_number(v);
}

}  // namespace erloss

#endif
