#pragma once

#include <stdexcept>
#include <string>

namespace nucmorph {

enum class ErrorKind {
    invalid_argument,
    invalid_polygon,
    empty_region,
    empty_sample,
    sd_undefined,
    dimension_mismatch,
    insufficient_nuclei,
    undefined_auc,
    no_events,
    placement_failure,
    schema,
    io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `kind()` is stable and is what
/// callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace nucmorph
