#pragma once

#include <cstdint>
#include <vector>

#include "nucmorph/grid.hpp"
#include "nucmorph/mask_geometry.hpp"

namespace nucmorph {

/// Recipe for a synthetic ROI of non-overlapping elliptical nuclei.
/// Areas are log-normal in um^2 (parameters of log(area)); eccentricity is
/// uniform on [ecc_min, ecc_max]; orientation is uniform.
struct SynthSpec {
    int width = 400;
    int height = 300;
    double mpp = 0.25;
    std::size_t n_nuclei = 50;
    double log_area_mu = 3.0;      // log(um^2)
    double log_area_sigma = 0.3;
    double ecc_min = 0.0;
    double ecc_max = 0.8;
    int min_gap = 2;               // pixels kept free between nuclei
    double min_semi_axis_px = 4.0;  // shape draws with b below this are redrawn
    std::uint64_t seed = 0;

    void validate() const;
};

struct SynthNucleus {
    Label label = 0;
    Point center;            // pixel coordinates (pixel centers at i + 0.5)
    double semi_major = 0.0;  // px
    double semi_minor = 0.0;  // px
    double angle = 0.0;       // radians, major axis from +x toward +y
    double area_um2 = 0.0;    // pi * a * b * mpp^2
    double eccentricity = 0.0;

    bool contains(double x, double y) const;
};

struct SynthRoi {
    PixelGrid labels;
    std::vector<SynthNucleus> truth;  // truth[i].label == i + 1
};

/// Deterministic per seed. Nuclei are placed by rejection sampling within a
/// budget of 10 * n^2 attempts and never touch the image border. Throws
/// ErrorKind::placement_failure (naming the placed count) when the budget runs out.
SynthRoi generate_roi(const SynthSpec& spec);

/// Polygon approximation of a synthetic nucleus outline.
PolygonAnnotation ellipse_polygon(const SynthNucleus& nucleus, std::size_t n_vertices = 64);

}  // namespace nucmorph
