#pragma once

#include <optional>
#include <string>

namespace nucmorph {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// Empty string for an undefined value.
std::string format_optional(const std::optional<double>& value);

}  // namespace nucmorph
