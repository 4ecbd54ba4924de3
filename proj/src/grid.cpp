#include "nucmorph/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nucmorph/error.hpp"

namespace nucmorph {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid-argument";
        case ErrorKind::invalid_polygon: return "invalid-polygon";
        case ErrorKind::empty_region: return "empty-region";
        case ErrorKind::empty_sample: return "empty-sample";
        case ErrorKind::sd_undefined: return "sd-undefined";
        case ErrorKind::dimension_mismatch: return "dimension-mismatch";
        case ErrorKind::insufficient_nuclei: return "insufficient-nuclei";
        case ErrorKind::undefined_auc: return "undefined-auc";
        case ErrorKind::no_events: return "no-events";
        case ErrorKind::placement_failure: return "placement-failure";
        case ErrorKind::schema: return "schema";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

namespace {

void validate_shape(int width, int height, double mpp) {
    if (width < 1 || height < 1) {
        throw Error(ErrorKind::invalid_argument,
                    "grid dimensions must be >= 1, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
    if (!(mpp > 0.0) || !std::isfinite(mpp)) {
        throw Error(ErrorKind::invalid_argument, "mpp must be a positive finite number");
    }
}

}  // namespace

PixelGrid::PixelGrid(int width, int height, double mpp)
    : width_(width), height_(height), mpp_(mpp) {
    validate_shape(width, height, mpp);
    labels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

PixelGrid::PixelGrid(int width, int height, double mpp, std::vector<Label> labels)
    : width_(width), height_(height), mpp_(mpp), labels_(std::move(labels)) {
    validate_shape(width, height, mpp);
    if (labels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw Error(ErrorKind::dimension_mismatch,
                    "label buffer has " + std::to_string(labels_.size()) + " entries, expected " +
                        std::to_string(width) + "x" + std::to_string(height));
    }
}

Label PixelGrid::max_label() const noexcept {
    return labels_.empty() ? 0 : *std::max_element(labels_.begin(), labels_.end());
}

}  // namespace nucmorph
