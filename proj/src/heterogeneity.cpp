#include "nucmorph/heterogeneity.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nucmorph/error.hpp"
#include "nucmorph/morphometry.hpp"

namespace nucmorph {

RoiVariability roi_variability(std::span<const double> roi_values) {
    if (roi_values.size() < 2) {
        throw Error(ErrorKind::sd_undefined, "variability across ROIs needs at least two ROIs");
    }
    const Descriptive d = describe(roi_values);
    RoiVariability out;
    out.sd = *d.sd;
    if (d.mean != 0.0) out.cv = out.sd / d.mean;
    return out;
}

std::size_t hotspot_count(std::span<const double> roi_values, double threshold) {
    return static_cast<std::size_t>(
        std::count_if(roi_values.begin(), roi_values.end(), [threshold](double v) { return v >= threshold; }));
}

double hotspot_fraction(std::span<const double> roi_values, double threshold) {
    if (roi_values.empty()) throw Error(ErrorKind::empty_sample, "hotspot fraction of zero ROIs");
    return static_cast<double>(hotspot_count(roi_values, threshold)) / static_cast<double>(roi_values.size());
}

double case_score(const CaseRoiValues& c, std::size_t k, RoiAggregation agg) {
    if (c.values.empty()) throw Error(ErrorKind::empty_sample, "case '" + c.case_id + "' has no ROI values");
    if (k == 0) throw Error(ErrorKind::invalid_argument, "number of ROIs must be >= 1");
    const auto used = std::span<const double>(c.values).first(std::min(k, c.values.size()));
    if (agg == RoiAggregation::max) return *std::max_element(used.begin(), used.end());
    return std::accumulate(used.begin(), used.end(), 0.0) / static_cast<double>(used.size());
}

double auc_vs_num_rois(std::span<const CaseRoiValues> cases, std::size_t k, RoiAggregation agg) {
    std::vector<double> scores;
    std::vector<int> labels;
    scores.reserve(cases.size());
    labels.reserve(cases.size());
    for (const auto& c : cases) {
        scores.push_back(case_score(c, k, agg));
        labels.push_back(c.positive ? 1 : 0);
    }
    return roc_auc(scores, labels).auc;
}

std::vector<HotspotBucket> death_probability_table(std::span<const HotspotCase> cases) {
    // Key (numerator, denominator); zero-hotspot cases collapse to denominator 0.
    std::map<std::pair<std::size_t, std::size_t>, HotspotBucket> buckets;
    for (const auto& c : cases) {
        if (c.rois == 0 || c.hotspots > c.rois) {
            throw Error(ErrorKind::invalid_argument, "case '" + c.case_id + "' has an invalid hotspot fraction");
        }
        const std::pair<std::size_t, std::size_t> key{c.hotspots, c.hotspots == 0 ? 0 : c.rois};
        auto [it, inserted] = buckets.try_emplace(key);
        HotspotBucket& b = it->second;
        if (inserted) {
            b.numerator = c.hotspots;
            b.min_denominator = c.rois;
            b.max_denominator = c.rois;
        }
        b.min_denominator = std::min(b.min_denominator, c.rois);
        b.max_denominator = std::max(b.max_denominator, c.rois);
        (c.tumor_death ? b.tumor_deaths : b.other)++;
    }

    std::vector<HotspotBucket> out;
    for (auto& [key, b] : buckets) {
        b.fraction = static_cast<double>(b.numerator) / static_cast<double>(b.min_denominator);
        b.death_probability = static_cast<double>(b.tumor_deaths) / static_cast<double>(b.tumor_deaths + b.other);
        b.label = std::to_string(b.numerator) + "/" + std::to_string(b.min_denominator);
        if (b.max_denominator != b.min_denominator) b.label += "-" + std::to_string(b.max_denominator);
        out.push_back(b);
    }
    std::stable_sort(out.begin(), out.end(), [](const HotspotBucket& a, const HotspotBucket& b) {
        // Cross-multiplication keeps the fraction comparison exact.
        const auto lhs = a.numerator * b.min_denominator;
        const auto rhs = b.numerator * a.min_denominator;
        if (lhs != rhs) return lhs < rhs;
        return a.min_denominator < b.min_denominator;
    });
    return out;
}

}  // namespace nucmorph
