#pragma once

#include <span>
#include <string>
#include <vector>

#include "nucmorph/grid.hpp"

namespace nucmorph {

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct Pixel {
    int x = 0;
    int y = 0;
    friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Horizontal run of foreground pixels [x_begin, x_end] (inclusive) on row y.
struct Run {
    int y = 0;
    int x_begin = 0;
    int x_end = 0;
    int length() const noexcept { return x_end - x_begin + 1; }
    friend bool operator==(const Run&, const Run&) = default;
};

struct BoundingBox {
    int min_x = 0;
    int min_y = 0;
    int max_x = 0;
    int max_y = 0;
    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Closed polygon in pixel coordinates; pixel (i, j) spans [i, i+1) x [j, j+1).
struct PolygonAnnotation {
    std::string id;
    std::vector<Point> vertices;
    std::string label;
    friend bool operator==(const PolygonAnnotation&, const PolygonAnnotation&) = default;
};

/// One segmented nucleus. Coordinates are in pixels; the centroid is the mean
/// of pixel centers (x + 0.5, y + 0.5).
struct NucleusRegion {
    Label id = 0;
    std::size_t pixel_count = 0;
    double area_um2 = 0.0;
    Point centroid;
    double eccentricity = 0.0;
    double solidity = 1.0;
    bool touches_border = false;
    BoundingBox bbox;
    std::vector<Run> runs;  // sorted by (y, x_begin)
};

/// 8-connected component labelling of a binary raster (any non-zero label is
/// foreground). Ids are dense 1..N in raster-scan order of each component's
/// first pixel.
PixelGrid label_components(const PixelGrid& binary);

/// Even-odd rasterization sampled at pixel centers; centers lying exactly on an
/// edge count as inside. Throws ErrorKind::invalid_polygon for < 3 vertices.
PixelGrid rasterize_polygon(const PolygonAnnotation& poly, int width, int height,
                            double mpp = 1.0);

/// One region per label id present, ordered by id.
std::vector<NucleusRegion> region_properties(const PixelGrid& labeled);

/// Area of the convex hull of the corner points of every pixel.
double convex_hull_area(std::span<const Pixel> pixels);

/// Same hull computed from a region's runs; only run end points contribute.
double convex_hull_area(std::span<const Run> runs);

}  // namespace nucmorph
