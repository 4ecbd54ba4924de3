#include "nucmorph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nucmorph/error.hpp"
#include "nucmorph/rng.hpp"

namespace nucmorph {

void SynthSpec::validate() const {
    if (width < 1 || height < 1) throw Error(ErrorKind::invalid_argument, "synthetic ROI needs positive dimensions");
    if (!(mpp > 0.0)) throw Error(ErrorKind::invalid_argument, "mpp must be > 0");
    if (!(ecc_min >= 0.0 && ecc_max < 1.0 && ecc_min <= ecc_max)) {
        throw Error(ErrorKind::invalid_argument, "eccentricity range must satisfy 0 <= min <= max < 1");
    }
    if (!(log_area_sigma >= 0.0)) throw Error(ErrorKind::invalid_argument, "log-area sigma must be >= 0");
    if (min_gap < 0) throw Error(ErrorKind::invalid_argument, "min_gap must be >= 0");
}

bool SynthNucleus::contains(double x, double y) const {
    const double dx = x - center.x;
    const double dy = y - center.y;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double u = (dx * c + dy * s) / semi_major;
    const double v = (-dx * s + dy * c) / semi_minor;
    return u * u + v * v <= 1.0;
}

namespace {

struct Shape {
    double a, b, angle, ecc;
};

Shape draw_shape(const SynthSpec& spec, Rng& rng) {
    for (int tries = 0; tries < 1000; ++tries) {
        const double area_um2 = std::exp(spec.log_area_mu + spec.log_area_sigma * rng.normal());
        const double ecc = rng.uniform(spec.ecc_min, spec.ecc_max);
        const double angle = rng.uniform(0.0, std::numbers::pi);
        const double area_px = area_um2 / (spec.mpp * spec.mpp);
        const double axis_ratio = std::sqrt(1.0 - ecc * ecc);  // b / a
        const double a = std::sqrt(area_px / (std::numbers::pi * axis_ratio));
        const double b = a * axis_ratio;
        if (b >= spec.min_semi_axis_px) return {a, b, angle, ecc};
    }
    throw Error(ErrorKind::invalid_argument, "size distribution rarely yields semi-axes >= min_semi_axis_px");
}

}  // namespace

SynthRoi generate_roi(const SynthSpec& spec) {
    spec.validate();
    SynthRoi roi{PixelGrid(spec.width, spec.height, spec.mpp), {}};
    if (spec.n_nuclei == 0) return roi;

    Rng rng(spec.seed);
    const std::size_t budget = 10 * spec.n_nuclei * spec.n_nuclei;
    std::size_t attempts = 0;
    std::vector<Pixel> pixels;
    const int gap = spec.min_gap;

    while (roi.truth.size() < spec.n_nuclei) {
        const Shape shape = draw_shape(spec, rng);
        const double c = std::cos(shape.angle);
        const double s = std::sin(shape.angle);
        const double half_w = std::sqrt(shape.a * shape.a * c * c + shape.b * shape.b * s * s);
        const double half_h = std::sqrt(shape.a * shape.a * s * s + shape.b * shape.b * c * c);
        const double margin_x = half_w + 1.0 + gap;
        const double margin_y = half_h + 1.0 + gap;

        bool placed = false;
        while (!placed) {
            if (attempts >= budget) {
                throw Error(ErrorKind::placement_failure,
                            "placed " + std::to_string(roi.truth.size()) + " of " + std::to_string(spec.n_nuclei) +
                                " nuclei before exhausting " + std::to_string(budget) + " attempts");
            }
            ++attempts;
            if (2.0 * margin_x >= spec.width || 2.0 * margin_y >= spec.height) continue;

            SynthNucleus n;
            n.center = {rng.uniform(margin_x, spec.width - margin_x), rng.uniform(margin_y, spec.height - margin_y)};
            n.semi_major = shape.a;
            n.semi_minor = shape.b;
            n.angle = shape.angle;

            pixels.clear();
            const int x0 = std::max(0, static_cast<int>(std::floor(n.center.x - half_w)));
            const int x1 = std::min(spec.width - 1, static_cast<int>(std::ceil(n.center.x + half_w)));
            const int y0 = std::max(0, static_cast<int>(std::floor(n.center.y - half_h)));
            const int y1 = std::min(spec.height - 1, static_cast<int>(std::ceil(n.center.y + half_h)));
            bool clear = true;
            for (int y = y0; y <= y1 && clear; ++y) {
                for (int x = x0; x <= x1 && clear; ++x) {
                    if (!n.contains(x + 0.5, y + 0.5)) continue;
                    for (int dy = -gap; dy <= gap && clear; ++dy) {
                        for (int dx = -gap; dx <= gap; ++dx) {
                            if (roi.labels.contains(x + dx, y + dy) && roi.labels.at(x + dx, y + dy) != 0) {
                                clear = false;
                                break;
                            }
                        }
                    }
                    pixels.push_back({x, y});
                }
            }
            if (!clear || pixels.empty()) continue;

            n.label = static_cast<Label>(roi.truth.size() + 1);
            n.area_um2 = std::numbers::pi * shape.a * shape.b * spec.mpp * spec.mpp;
            n.eccentricity = shape.ecc;
            for (const auto& p : pixels) roi.labels.set(p.x, p.y, n.label);
            roi.truth.push_back(n);
            placed = true;
        }
    }
    return roi;
}

PolygonAnnotation ellipse_polygon(const SynthNucleus& nucleus, std::size_t n_vertices) {
    PolygonAnnotation poly;
    poly.id = std::to_string(nucleus.label);
    poly.label = "nucleus";
    const double c = std::cos(nucleus.angle);
    const double s = std::sin(nucleus.angle);
    for (std::size_t i = 0; i < n_vertices; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_vertices);
        const double u = nucleus.semi_major * std::cos(t);
        const double v = nucleus.semi_minor * std::sin(t);
        poly.vertices.push_back({nucleus.center.x + u * c - v * s, nucleus.center.y + u * s + v * c});
    }
    return poly;
}

}  // namespace nucmorph
