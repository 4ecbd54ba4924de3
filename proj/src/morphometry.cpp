#include "nucmorph/morphometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nucmorph/error.hpp"
#include "nucmorph/format.hpp"

namespace nucmorph {

void FilterConfig::validate() const {
    if (!(min_area_um2 >= 0.0)) {
        throw Error(ErrorKind::invalid_argument, "min_area_um2 must be >= 0");
    }
    for (double t : large_thresholds_um2) {
        if (!(t > 0.0)) throw Error(ErrorKind::invalid_argument, "large-nucleus thresholds must be > 0");
    }
    for (double t : indent_thresholds) {
        if (!(t > 0.0 && t < 1.0)) {
            throw Error(ErrorKind::invalid_argument, "indentation thresholds must lie in (0, 1)");
        }
    }
}

std::vector<NucleusRegion> filter_regions(std::span<const NucleusRegion> regions,
                                          const FilterConfig& cfg) {
    std::vector<NucleusRegion> kept;
    for (const auto& r : regions) {
        if (r.area_um2 < cfg.min_area_um2) continue;
        if (cfg.exclude_border_touching && r.touches_border) continue;
        kept.push_back(r);
    }
    return kept;
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw Error(ErrorKind::empty_sample, "quantile of an empty sample");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

namespace {

Descriptive describe_impl(std::span<const double> values, bool allow_single) {
    const std::size_t n = values.size();
    if (n == 0) throw Error(ErrorKind::empty_sample, "statistics of an empty sample");
    if (n == 1) {
        if (!allow_single) throw Error(ErrorKind::sd_undefined, "standard deviation undefined for a single value");
        Descriptive one;
        one.mean = one.median = one.p90 = values[0];
        return one;
    }

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    const double nd = static_cast<double>(n);
    const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / nd;
    double m2 = 0.0, m3 = 0.0;
    for (double v : sorted) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }

    Descriptive out;
    out.mean = mean;
    out.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    out.sd = std::sqrt(m2 / (nd - 1.0));
    out.p90 = quantile_sorted(sorted, 0.9);
    m2 /= nd;
    m3 /= nd;
    if (n >= 3 && m2 > 0.0) {
        const double g1 = m3 / std::pow(m2, 1.5);
        out.skewness = g1 * std::sqrt(nd * (nd - 1.0)) / (nd - 2.0);
    }
    return out;
}

SizeStats size_stats_impl(std::span<const double> areas_um2, std::span<const double> large_thresholds_um2,
                          bool allow_single) {
    SizeStats s;
    s.area = describe_impl(areas_um2, allow_single);
    s.p90_over_median = s.area.p90 / s.area.median;

    std::vector<double> sorted(areas_um2.begin(), areas_um2.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const std::size_t top = (sorted.size() + 9) / 10;  // ceil(0.1 n)
    s.mean_top10pct = std::accumulate(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(top), 0.0) /
                      static_cast<double>(top);

    const double n = static_cast<double>(areas_um2.size());
    s.large_thresholds.assign(large_thresholds_um2.begin(), large_thresholds_um2.end());
    for (double t : large_thresholds_um2) {
        const auto above = std::count_if(areas_um2.begin(), areas_um2.end(), [t](double a) { return a > t; });
        s.pct_large.push_back(static_cast<double>(above) / n);
    }
    return s;
}

ShapeStats shape_stats_impl(std::span<const NucleusRegion> regions, std::span<const double> indent_thresholds,
                            bool allow_single) {
    std::vector<double> ecc, sol;
    ecc.reserve(regions.size());
    sol.reserve(regions.size());
    for (const auto& r : regions) {
        ecc.push_back(r.eccentricity);
        sol.push_back(r.solidity);
    }
    ShapeStats s;
    s.eccentricity = describe_impl(ecc, allow_single);
    s.solidity = describe_impl(sol, allow_single);
    s.inverted_mean_solidity = 1.0 - s.solidity.mean;
    const double n = static_cast<double>(sol.size());
    s.indent_thresholds.assign(indent_thresholds.begin(), indent_thresholds.end());
    for (double c : indent_thresholds) {
        const auto below = std::count_if(sol.begin(), sol.end(), [c](double v) { return v < c; });
        s.pct_indented.push_back(static_cast<double>(below) / n);
    }
    return s;
}

}  // namespace

Descriptive describe(std::span<const double> values) { return describe_impl(values, false); }

SizeStats size_stats(std::span<const double> areas_um2, std::span<const double> large_thresholds_um2) {
    return size_stats_impl(areas_um2, large_thresholds_um2, false);
}

ShapeStats shape_stats(std::span<const NucleusRegion> regions, std::span<const double> indent_thresholds) {
    return shape_stats_impl(regions, indent_thresholds, false);
}

RoiFeatureSet roi_features(std::span<const NucleusRegion> regions, const FilterConfig& cfg) {
    cfg.validate();
    const auto kept = filter_regions(regions, cfg);
    if (kept.empty()) {
        throw Error(ErrorKind::empty_sample, "no nucleus survives the size filter");
    }
    std::vector<double> areas;
    areas.reserve(kept.size());
    for (const auto& r : kept) areas.push_back(r.area_um2);

    RoiFeatureSet f;
    f.n_nuclei = kept.size();
    f.size = size_stats_impl(areas, cfg.large_thresholds_um2, true);
    f.shape = shape_stats_impl(kept, cfg.indent_thresholds, true);
    return f;
}

RoiFeatureSet roi_features(const PixelGrid& grid, const FilterConfig& cfg, MaskMode mode) {
    if (mode == MaskMode::binary) {
        return roi_features(region_properties(label_components(grid)), cfg);
    }
    return roi_features(region_properties(grid), cfg);
}

namespace {

void append_descriptive(std::vector<NamedValue>& out, const std::string& prefix, const Descriptive& d,
                        bool with_median_p90) {
    out.emplace_back(prefix + "_mean", d.mean);
    if (with_median_p90) out.emplace_back(prefix + "_median", d.median);
    out.emplace_back(prefix + "_sd", d.sd);
    if (with_median_p90) out.emplace_back(prefix + "_p90", d.p90);
    out.emplace_back(prefix + "_skewness", d.skewness);
}

std::string large_name(double t) { return "pct_large_gt_" + format_double(t); }
std::string indent_name(double c) { return "pct_indented_lt_" + format_double(c); }

}  // namespace

std::vector<NamedValue> named_values(const RoiFeatureSet& f) {
    std::vector<NamedValue> out;
    append_descriptive(out, "area", f.size.area, true);
    out.emplace_back("area_p90_over_median", f.size.p90_over_median);
    out.emplace_back("area_mean_top10pct", f.size.mean_top10pct);
    for (std::size_t i = 0; i < f.size.large_thresholds.size(); ++i) {
        out.emplace_back(large_name(f.size.large_thresholds[i]), f.size.pct_large[i]);
    }
    append_descriptive(out, "ecc", f.shape.eccentricity, false);
    append_descriptive(out, "sol", f.shape.solidity, false);
    out.emplace_back("inverted_mean_solidity", f.shape.inverted_mean_solidity);
    for (std::size_t i = 0; i < f.shape.indent_thresholds.size(); ++i) {
        out.emplace_back(indent_name(f.shape.indent_thresholds[i]), f.shape.pct_indented[i]);
    }
    return out;
}

std::vector<std::string> parameter_names(const FilterConfig& cfg) {
    std::vector<std::string> names = {"area_mean", "area_median", "area_sd", "area_p90", "area_skewness",
                                      "area_p90_over_median", "area_mean_top10pct"};
    for (double t : cfg.large_thresholds_um2) names.push_back(large_name(t));
    for (const char* n : {"ecc_mean", "ecc_sd", "ecc_skewness", "sol_mean", "sol_sd", "sol_skewness",
                          "inverted_mean_solidity"}) {
        names.emplace_back(n);
    }
    for (double c : cfg.indent_thresholds) names.push_back(indent_name(c));
    return names;
}

CaseFeatureSet aggregate_case(std::string case_id, std::span<const RoiFeatureSet> rois) {
    if (rois.empty()) {
        throw Error(ErrorKind::empty_sample, "case '" + case_id + "' has no ROI feature sets");
    }
    CaseFeatureSet out;
    out.case_id = std::move(case_id);
    out.rois.assign(rois.begin(), rois.end());

    const auto first = named_values(rois.front());
    std::vector<double> sums(first.size(), 0.0);
    std::vector<std::size_t> counts(first.size(), 0);
    for (const auto& roi : rois) {
        out.n_nuclei += roi.n_nuclei;
        const auto values = named_values(roi);
        if (values.size() != first.size()) {
            throw Error(ErrorKind::invalid_argument,
                        "ROIs of case '" + out.case_id + "' were measured with different thresholds");
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i].first != first[i].first) {
                throw Error(ErrorKind::invalid_argument,
                            "ROIs of case '" + out.case_id + "' were measured with different thresholds");
            }
            if (values[i].second) {
                sums[i] += *values[i].second;
                ++counts[i];
            }
        }
    }
    for (std::size_t i = 0; i < first.size(); ++i) {
        std::optional<double> mean;
        if (counts[i] > 0) mean = sums[i] / static_cast<double>(counts[i]);
        out.means.emplace_back(first[i].first, mean);
    }
    return out;
}

}  // namespace nucmorph
