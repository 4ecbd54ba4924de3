#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nucmorph/biostats.hpp"

namespace nucmorph {

struct RoiVariability {
    double sd = 0.0;
    std::optional<double> cv;  // undefined when the mean is zero
};

/// Sample SD (n - 1) across ROIs and the coefficient of variation SD / mean.
RoiVariability roi_variability(std::span<const double> roi_values);

/// Number of ROIs with value >= threshold.
std::size_t hotspot_count(std::span<const double> roi_values, double threshold);

/// Fraction of ROIs with value >= threshold.
double hotspot_fraction(std::span<const double> roi_values, double threshold);

/// Per-ROI values of one parameter for one case, in ROI selection order.
struct CaseRoiValues {
    std::string case_id;
    std::vector<double> values;
    bool positive = false;
};

enum class RoiAggregation { mean, max };

/// Case score from the first min(k, n) ROIs.
double case_score(const CaseRoiValues& c, std::size_t k, RoiAggregation agg = RoiAggregation::mean);

/// AUC of case scores built from the first k ROIs of every case.
double auc_vs_num_rois(std::span<const CaseRoiValues> cases, std::size_t k,
                       RoiAggregation agg = RoiAggregation::mean);

struct HotspotCase {
    std::string case_id;
    std::size_t hotspots = 0;
    std::size_t rois = 0;
    bool tumor_death = false;
};

struct HotspotBucket {
    std::string label;  // "0/3-5", "2/4", ...
    std::size_t numerator = 0;
    std::size_t min_denominator = 0;
    std::size_t max_denominator = 0;
    double fraction = 0.0;
    std::size_t tumor_deaths = 0;
    std::size_t other = 0;
    double death_probability = 0.0;
};

/// Cases bucketed by hotspot count / ROI count. Cases without any hotspot
/// share one bucket regardless of ROI count; other buckets keep the
/// unreduced fraction. Ordered by fraction, then denominator; empty buckets
/// never appear.
std::vector<HotspotBucket> death_probability_table(std::span<const HotspotCase> cases);

}  // namespace nucmorph
