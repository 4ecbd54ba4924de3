#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nucmorph/grid.hpp"
#include "nucmorph/mask_geometry.hpp"

namespace nucmorph {

struct FilterConfig {
    double min_area_um2 = 7.0;
    std::vector<double> large_thresholds_um2 = {37.8, 50.3};
    std::vector<double> indent_thresholds = {0.913, 0.936, 0.943};
    bool exclude_border_touching = false;

    /// Throws ErrorKind::invalid_argument when a field is out of range.
    void validate() const;
};

/// Location/spread summary shared by the size and shape parameters.
/// `skewness` is empty for n < 3 or a zero-variance sample.
struct Descriptive {
    double mean = 0.0;
    double median = 0.0;
    std::optional<double> sd;  // empty only for a single nucleus in roi_features
    double p90 = 0.0;
    std::optional<double> skewness;
};

struct SizeStats {
    Descriptive area;
    double p90_over_median = 0.0;
    double mean_top10pct = 0.0;
    std::vector<double> large_thresholds;
    std::vector<double> pct_large;  // parallel to large_thresholds
};

struct ShapeStats {
    Descriptive eccentricity;
    Descriptive solidity;
    double inverted_mean_solidity = 0.0;
    std::vector<double> indent_thresholds;
    std::vector<double> pct_indented;  // parallel to indent_thresholds
};

struct RoiFeatureSet {
    std::size_t n_nuclei = 0;
    SizeStats size;
    ShapeStats shape;
};

/// A named parameter value; empty when undefined for this ROI or case.
using NamedValue = std::pair<std::string, std::optional<double>>;

/// Every parameter in a fixed column order (n_nuclei excluded). Threshold
/// parameters are named like "pct_large_gt_37.8" / "pct_indented_lt_0.913".
std::vector<NamedValue> named_values(const RoiFeatureSet& features);

/// Column names only, in the same order as named_values().
std::vector<std::string> parameter_names(const FilterConfig& cfg);

struct CaseFeatureSet {
    std::string case_id;
    std::vector<NamedValue> means;  // per-parameter mean over ROIs
    std::size_t n_nuclei = 0;       // summed over ROIs
    std::vector<RoiFeatureSet> rois;
};

/// Order-preserving; keeps area_um2 >= min_area_um2.
std::vector<NucleusRegion> filter_regions(std::span<const NucleusRegion> regions,
                                          const FilterConfig& cfg);

/// Mean, median, sample SD, interpolated 90th percentile and adjusted
/// Fisher-Pearson skewness. Throws empty_sample for n = 0, sd_undefined for n = 1.
Descriptive describe(std::span<const double> values);

/// Linear interpolation between order statistics at index q * (n - 1).
double quantile_sorted(std::span<const double> sorted, double q);

SizeStats size_stats(std::span<const double> areas_um2,
                     std::span<const double> large_thresholds_um2);

ShapeStats shape_stats(std::span<const NucleusRegion> regions,
                       std::span<const double> indent_thresholds);

enum class MaskMode { binary, label };

/// label (binary mode only) -> region_properties -> filter -> size + shape stats.
RoiFeatureSet roi_features(const PixelGrid& grid, const FilterConfig& cfg,
                           MaskMode mode = MaskMode::binary);

/// Stats over already-measured regions (the filter is applied here). A single
/// surviving nucleus yields undefined SD and skewness.
RoiFeatureSet roi_features(std::span<const NucleusRegion> regions, const FilterConfig& cfg);

/// Unweighted per-parameter mean across ROIs; undefined values are skipped.
CaseFeatureSet aggregate_case(std::string case_id, std::span<const RoiFeatureSet> rois);

}  // namespace nucmorph
