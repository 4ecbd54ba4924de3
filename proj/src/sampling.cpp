#include "nucmorph/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "nucmorph/error.hpp"
#include "nucmorph/rng.hpp"

namespace nucmorph {

std::vector<GridField> GridSpec::fields(int width, int height) const {
    if (cols < 1 || rows < 1) throw Error(ErrorKind::invalid_argument, "grid needs at least one field");
    if (width < cols || height < rows) {
        throw Error(ErrorKind::invalid_argument, "image is smaller than the sampling grid");
    }
    const int fw = width / cols;
    const int fh = height / rows;
    std::vector<GridField> out;
    out.reserve(static_cast<std::size_t>(cols * rows));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            GridField f;
            f.col = c;
            f.row = r;
            f.x0 = c * fw;
            f.y0 = r * fh;
            f.x1 = c == cols - 1 ? width : (c + 1) * fw;
            f.y1 = r == rows - 1 ? height : (r + 1) * fh;
            out.push_back(f);
        }
    }
    return out;
}

std::vector<GridField> GridSpec::traversal(int width, int height) const {
    auto order = fields(width, height);
    // Doubled coordinates keep the centers integral.
    auto distance = [width, height](const GridField& f) {
        const long dx = std::labs(static_cast<long>(f.x0 + f.x1) - width);
        const long dy = std::labs(static_cast<long>(f.y0 + f.y1) - height);
        return std::max(dx, dy);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](const GridField& a, const GridField& b) { return distance(a) < distance(b); });
    return order;
}

namespace {

bool captures(const GridField& f, const NucleusRegion& r) {
    if (r.bbox.max_x < f.x0 || r.bbox.min_x >= f.x1 || r.bbox.max_y < f.y0 || r.bbox.min_y >= f.y1) {
        return false;
    }
    for (const auto& run : r.runs) {
        if (run.y < f.y0 || run.y >= f.y1) continue;
        if (run.x_end >= f.x0 && run.x_begin < f.x1) return true;
    }
    return false;
}

}  // namespace

SampleResult grid_sample(std::span<const NucleusRegion> regions, int width, int height,
                         const GridSpec& spec, std::size_t min_count) {
    std::vector<const NucleusRegion*> eligible;
    for (const auto& r : regions) {
        if (!r.touches_border) eligible.push_back(&r);
    }
    if (eligible.empty()) {
        throw Error(ErrorKind::empty_sample, "no eligible (non-border) nuclei for grid sampling");
    }
    std::sort(eligible.begin(), eligible.end(),
              [](const NucleusRegion* a, const NucleusRegion* b) { return a->id < b->id; });

    SampleResult result;
    std::unordered_set<Label> taken;
    for (const auto& field : spec.traversal(width, height)) {
        if (result.selected_region_ids.size() >= min_count) break;
        result.fields_used.push_back(field);
        for (const NucleusRegion* r : eligible) {
            if (taken.contains(r->id) || !captures(field, *r)) continue;
            taken.insert(r->id);
            result.selected_region_ids.push_back(r->id);
        }
    }
    result.reached_target = result.selected_region_ids.size() >= min_count;
    return result;
}

std::vector<NucleusRegion> stratified_sample_12(std::span<const NucleusRegion> regions, std::uint64_t seed) {
    constexpr std::size_t per_stratum = 4;
    const std::size_t n = regions.size();
    if (n < 3 * per_stratum) {
        throw Error(ErrorKind::insufficient_nuclei,
                    "stratified sampling needs at least 12 nuclei, got " + std::to_string(n));
    }
    std::vector<const NucleusRegion*> sorted;
    sorted.reserve(n);
    for (const auto& r : regions) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const NucleusRegion* a, const NucleusRegion* b) {
        return a->area_um2 != b->area_um2 ? a->area_um2 < b->area_um2 : a->id < b->id;
    });

    const std::size_t third = n / 3;
    const std::size_t bounds[4] = {0, third, n - third, n};  // middle tertile takes the remainder

    Rng rng(seed);
    std::vector<NucleusRegion> picked;
    picked.reserve(3 * per_stratum);
    for (int s = 0; s < 3; ++s) {
        std::vector<const NucleusRegion*> stratum(sorted.begin() + static_cast<std::ptrdiff_t>(bounds[s]),
                                                  sorted.begin() + static_cast<std::ptrdiff_t>(bounds[s + 1]));
        // Partial Fisher-Yates.
        for (std::size_t i = 0; i < per_stratum; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(stratum.size() - i));
            std::swap(stratum[i], stratum[j]);
            picked.push_back(*stratum[i]);
        }
    }
    return picked;
}

}  // namespace nucmorph
