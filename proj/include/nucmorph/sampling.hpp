#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nucmorph/mask_geometry.hpp"

namespace nucmorph {

/// Field rectangle [x0, x1) x [y0, y1) in pixels.
struct GridField {
    int col = 0;
    int row = 0;
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    friend bool operator==(const GridField&, const GridField&) = default;
};

/// cols x rows fields tiling the image; the integer-division remainder goes
/// to the last column / row.
struct GridSpec {
    int cols = 5;
    int rows = 6;

    std::vector<GridField> fields(int width, int height) const;

    /// Center-out traversal: ascending Chebyshev distance of the field center
    /// from the image center, ties broken row-major.
    std::vector<GridField> traversal(int width, int height) const;
};

struct SampleResult {
    std::vector<Label> selected_region_ids;  // capture order
    std::vector<GridField> fields_used;      // prefix of the traversal
    bool reached_target = false;
};

/// Gold-standard grid protocol: consume fields in traversal order, collecting
/// every non-border region with a pixel inside the field, until at least
/// `min_count` distinct regions are collected.
SampleResult grid_sample(std::span<const NucleusRegion> regions, int width, int height,
                         const GridSpec& spec = {}, std::size_t min_count = 100);

/// Practicable protocol: 4 small, 4 intermediate and 4 large nuclei drawn from
/// area tertiles. Returned in tertile order (small, intermediate, large).
std::vector<NucleusRegion> stratified_sample_12(std::span<const NucleusRegion> regions,
                                                std::uint64_t seed);

}  // namespace nucmorph
