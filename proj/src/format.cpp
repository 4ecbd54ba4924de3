#include "nucmorph/format.hpp"

#include <charconv>
#include <cmath>

namespace nucmorph {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

std::string format_optional(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string();
}

}  // namespace nucmorph
