#include "nucmorph/mask_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "nucmorph/error.hpp"

namespace nucmorph {

namespace {

class DisjointSet {
public:
    std::uint32_t make() {
        parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
        return parent_.back();
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        // Smaller root wins so the representative is the earliest provisional label.
        if (a < b) parent_[b] = a; else parent_[a] = b;
    }

private:
    std::vector<std::uint32_t> parent_;
};

struct IntPoint {
    std::int64_t x;
    std::int64_t y;
    auto operator<=>(const IntPoint&) const = default;
};

std::int64_t cross(const IntPoint& o, const IntPoint& a, const IntPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; returns twice the hull area (exact for integer input).
std::int64_t twice_hull_area(std::vector<IntPoint>& pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return 0;

    std::vector<IntPoint> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);

    std::int64_t twice = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return twice < 0 ? -twice : twice;
}

struct Accumulator {
    Label id = 0;
    std::size_t count = 0;
    int origin_x = 0;
    int origin_y = 0;
    // Moments about the first pixel; keeps sums small for large images.
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    BoundingBox bbox;
    bool border = false;
    std::vector<Run> runs;
};

}  // namespace

PixelGrid label_components(const PixelGrid& binary) {
    const int w = binary.width();
    const int h = binary.height();
    std::vector<std::uint32_t> provisional(binary.size(), 0);
    DisjointSet sets;
    sets.make();  // slot 0 = background

    auto idx = [w](int x, int y) {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
    };

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (binary.at(x, y) == 0) continue;
            std::uint32_t current = 0;
            // Already-visited 8-neighbours: W, NW, N, NE.
            const int nx[4] = {x - 1, x - 1, x, x + 1};
            const int ny[4] = {y, y - 1, y - 1, y - 1};
            for (int n = 0; n < 4; ++n) {
                if (nx[n] < 0 || nx[n] >= w || ny[n] < 0) continue;
                const std::uint32_t neighbour = provisional[idx(nx[n], ny[n])];
                if (neighbour == 0) continue;
                if (current == 0) current = neighbour;
                else sets.unite(current, neighbour);
            }
            if (current == 0) current = sets.make();
            provisional[idx(x, y)] = current;
        }
    }

    std::unordered_map<std::uint32_t, Label> dense;
    std::vector<Label> out(binary.size(), 0);
    Label next = 0;
    for (std::size_t i = 0; i < provisional.size(); ++i) {
        if (provisional[i] == 0) continue;
        const std::uint32_t root = sets.find(provisional[i]);
        auto [it, inserted] = dense.try_emplace(root, next + 1);
        if (inserted) ++next;
        out[i] = it->second;
    }
    return PixelGrid(w, h, binary.mpp(), std::move(out));
}

PixelGrid rasterize_polygon(const PolygonAnnotation& poly, int width, int height, double mpp) {
    if (poly.vertices.size() < 3) {
        throw Error(ErrorKind::invalid_polygon,
                    "polygon '" + poly.id + "' has " + std::to_string(poly.vertices.size()) +
                        " vertices; at least 3 are required");
    }
    PixelGrid grid(width, height, mpp);
    const auto& v = poly.vertices;
    const std::size_t n = v.size();

    double min_y = v[0].y, max_y = v[0].y;
    for (const auto& p : v) {
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const int row_begin = std::max(0, static_cast<int>(std::ceil(min_y - 0.5)));
    const int row_end = std::min(height - 1, static_cast<int>(std::floor(max_y - 0.5)));

    std::vector<double> crossings;
    for (int row = row_begin; row <= row_end; ++row) {
        const double yc = row + 0.5;
        crossings.clear();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Point& a = v[i];
            const Point& b = v[j];
            if ((a.y > yc) != (b.y > yc)) {
                crossings.push_back((b.x - a.x) * (yc - a.y) / (b.y - a.y) + a.x);
            }
        }
        std::sort(crossings.begin(), crossings.end());
        for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
            // Centers xc with crossings[k] <= xc < crossings[k + 1].
            const int first = std::max(0, static_cast<int>(std::ceil(crossings[k] - 0.5)));
            const int last = std::min(width - 1, static_cast<int>(std::ceil(crossings[k + 1] - 0.5)) - 1);
            for (int col = first; col <= last; ++col) grid.set(col, row, 1);
        }
    }

    // Centers exactly on an edge are inside.
    constexpr double eps = 1e-9;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = v[j];
        const Point& b = v[i];
        const int r0 = std::max(0, static_cast<int>(std::ceil(std::min(a.y, b.y) - 0.5 - eps)));
        const int r1 = std::min(height - 1, static_cast<int>(std::floor(std::max(a.y, b.y) - 0.5 + eps)));
        for (int row = r0; row <= r1; ++row) {
            const double yc = row + 0.5;
            if (std::abs(a.y - b.y) < eps) {
                if (std::abs(yc - a.y) > eps) continue;
                const int c0 = std::max(0, static_cast<int>(std::ceil(std::min(a.x, b.x) - 0.5 - eps)));
                const int c1 = std::min(width - 1, static_cast<int>(std::floor(std::max(a.x, b.x) - 0.5 + eps)));
                for (int col = c0; col <= c1; ++col) grid.set(col, row, 1);
                continue;
            }
            const double x = a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y);
            const double col_f = x - 0.5;
            const double col_r = std::round(col_f);
            if (std::abs(col_f - col_r) > eps) continue;
            const int col = static_cast<int>(col_r);
            if (col >= 0 && col < width) grid.set(col, row, 1);
        }
    }
    return grid;
}

std::vector<NucleusRegion> region_properties(const PixelGrid& labeled) {
    const int w = labeled.width();
    const int h = labeled.height();
    const Label max_label = labeled.max_label();

    std::vector<Accumulator> acc;
    std::vector<std::int64_t> slot_of_dense;
    std::unordered_map<Label, std::size_t> slot_of_sparse;
    const bool dense_ids = static_cast<std::size_t>(max_label) <= labeled.size();
    if (dense_ids) slot_of_dense.assign(static_cast<std::size_t>(max_label) + 1, -1);

    auto slot_for = [&](Label id, int x, int y) -> Accumulator& {
        std::size_t slot;
        if (dense_ids) {
            auto& s = slot_of_dense[id];
            if (s < 0) {
                s = static_cast<std::int64_t>(acc.size());
                acc.emplace_back();
            }
            slot = static_cast<std::size_t>(s);
        } else {
            auto [it, inserted] = slot_of_sparse.try_emplace(id, acc.size());
            if (inserted) acc.emplace_back();
            slot = it->second;
        }
        Accumulator& a = acc[slot];
        if (a.count == 0) {
            a.id = id;
            a.origin_x = x;
            a.origin_y = y;
            a.bbox = {x, y, x, y};
        }
        return a;
    };

    for (int y = 0; y < h; ++y) {
        int x = 0;
        while (x < w) {
            const Label id = labeled.at(x, y);
            int end = x;
            while (end + 1 < w && labeled.at(end + 1, y) == id) ++end;
            if (id != 0) {
                Accumulator& a = slot_for(id, x, y);
                a.runs.push_back({y, x, end});
                const double dy = y - a.origin_y;
                for (int px = x; px <= end; ++px) {
                    const double dx = px - a.origin_x;
                    a.sx += dx;
                    a.sy += dy;
                    a.sxx += dx * dx;
                    a.syy += dy * dy;
                    a.sxy += dx * dy;
                }
                a.count += static_cast<std::size_t>(end - x + 1);
                a.bbox.min_x = std::min(a.bbox.min_x, x);
                a.bbox.max_x = std::max(a.bbox.max_x, end);
                a.bbox.max_y = y;
                if (y == 0 || y == h - 1 || x == 0 || end == w - 1) a.border = true;
            }
            x = end + 1;
        }
    }

    std::sort(acc.begin(), acc.end(), [](const Accumulator& a, const Accumulator& b) { return a.id < b.id; });

    const double pixel_area = labeled.mpp() * labeled.mpp();
    std::vector<NucleusRegion> regions;
    regions.reserve(acc.size());
    for (auto& a : acc) {
        NucleusRegion r;
        r.id = a.id;
        r.pixel_count = a.count;
        r.area_um2 = static_cast<double>(a.count) * pixel_area;
        const double n = static_cast<double>(a.count);
        const double mx = a.sx / n;
        const double my = a.sy / n;
        r.centroid = {a.origin_x + mx + 0.5, a.origin_y + my + 0.5};

        const double mu20 = std::max(0.0, a.sxx / n - mx * mx);
        const double mu02 = std::max(0.0, a.syy / n - my * my);
        const double mu11 = a.sxy / n - mx * my;
        const double half_trace = 0.5 * (mu20 + mu02);
        const double disc = std::sqrt(0.25 * (mu20 - mu02) * (mu20 - mu02) + mu11 * mu11);
        const double l1 = half_trace + disc;
        const double l2 = std::max(0.0, half_trace - disc);
        r.eccentricity = l1 > 0.0 ? std::sqrt(std::clamp(1.0 - l2 / l1, 0.0, 1.0)) : 0.0;

        const double hull = convex_hull_area(std::span<const Run>(a.runs));
        r.solidity = std::min(1.0, n / hull);
        r.touches_border = a.border;
        r.bbox = a.bbox;
        r.runs = std::move(a.runs);
        regions.push_back(std::move(r));
    }
    return regions;
}

double convex_hull_area(std::span<const Pixel> pixels) {
    if (pixels.empty()) throw Error(ErrorKind::empty_region, "convex hull of an empty pixel set");
    std::vector<IntPoint> pts;
    pts.reserve(pixels.size() * 4);
    for (const auto& p : pixels) {
        pts.push_back({p.x, p.y});
        pts.push_back({p.x + 1, p.y});
        pts.push_back({p.x, p.y + 1});
        pts.push_back({p.x + 1, p.y + 1});
    }
    return static_cast<double>(twice_hull_area(pts)) / 2.0;
}

double convex_hull_area(std::span<const Run> runs) {
    if (runs.empty()) throw Error(ErrorKind::empty_region, "convex hull of an empty pixel set");
    std::vector<IntPoint> pts;
    pts.reserve(runs.size() * 4);
    for (const auto& r : runs) {
        pts.push_back({r.x_begin, r.y});
        pts.push_back({r.x_begin, r.y + 1});
        pts.push_back({r.x_end + 1, r.y});
        pts.push_back({r.x_end + 1, r.y + 1});
    }
    return static_cast<double>(twice_hull_area(pts)) / 2.0;
}

}  // namespace nucmorph
