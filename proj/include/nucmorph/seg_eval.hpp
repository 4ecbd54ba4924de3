#pragma once

#include <span>
#include <vector>

#include "nucmorph/grid.hpp"
#include "nucmorph/mask_geometry.hpp"

namespace nucmorph {

struct MatchPair {
    Label pred_id = 0;
    Label gt_id = 0;
    double iou = 0.0;
};

struct MatchReport {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;  // 0 when there are no predictions (see no_predictions)
    double recall = 0.0;     // 0 when there is no ground truth (see no_ground_truth)
    double f1 = 0.0;
    bool no_predictions = false;
    bool no_ground_truth = false;
    std::vector<MatchPair> pairs;
};

/// Pixel overlap counts of two binary masks (non-zero = foreground).
struct OverlapCounts {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t both = 0;
};

OverlapCounts overlap(const PixelGrid& a, const PixelGrid& b);

/// 2|A n B| / (|A| + |B|); 1.0 when both masks are empty.
double dice(const PixelGrid& a, const PixelGrid& b);

/// Mean of per-image Dice scores.
double dice_macro(std::span<const OverlapCounts> images);

/// Dice of the pooled pixel counts.
double dice_micro(std::span<const OverlapCounts> images);

/// Number of pixels two regions share (same image frame).
std::size_t intersection_pixels(const NucleusRegion& a, const NucleusRegion& b);

/// Greedy one-to-one matching by descending IoU (ties: smaller pred id, then
/// smaller gt id) among pairs with IoU >= iou_min and a non-empty overlap.
MatchReport match_objects(std::span<const NucleusRegion> pred, std::span<const NucleusRegion> gt,
                          double iou_min = 0.5);

/// sqrt(mean((pred - ref)^2)).
double rmse(std::span<const double> pred, std::span<const double> ref);

}  // namespace nucmorph
