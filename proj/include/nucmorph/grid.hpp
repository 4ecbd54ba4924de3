#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace nucmorph {

using Label = std::uint32_t;

/// A 2-D label raster with physical resolution. Row-major, (0, 0) is the
/// top-left pixel. Label 0 is background; k > 0 is object k.
class PixelGrid {
public:
    PixelGrid(int width, int height, double mpp);
    PixelGrid(int width, int height, double mpp, std::vector<Label> labels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    double mpp() const noexcept { return mpp_; }
    std::size_t size() const noexcept { return labels_.size(); }

    Label at(int x, int y) const noexcept {
        return labels_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                       static_cast<std::size_t>(x)];
    }
    void set(int x, int y, Label value) noexcept {
        labels_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                static_cast<std::size_t>(x)] = value;
    }
    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    std::span<const Label> labels() const noexcept { return labels_; }
    std::span<Label> labels() noexcept { return labels_; }

    Label max_label() const noexcept;

    friend bool operator==(const PixelGrid&, const PixelGrid&) = default;

private:
    int width_;
    int height_;
    double mpp_;
    std::vector<Label> labels_;
};

}  // namespace nucmorph
