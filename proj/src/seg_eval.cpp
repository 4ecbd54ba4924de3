#include "nucmorph/seg_eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "nucmorph/error.hpp"

namespace nucmorph {

OverlapCounts overlap(const PixelGrid& a, const PixelGrid& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "mask dimensions differ: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                        " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
    }
    OverlapCounts c;
    const auto la = a.labels();
    const auto lb = b.labels();
    for (std::size_t i = 0; i < la.size(); ++i) {
        const bool fa = la[i] != 0;
        const bool fb = lb[i] != 0;
        c.a += fa;
        c.b += fb;
        c.both += fa && fb;
    }
    return c;
}

namespace {

double dice_of(const OverlapCounts& c) {
    if (c.a + c.b == 0) return 1.0;
    return 2.0 * static_cast<double>(c.both) / static_cast<double>(c.a + c.b);
}

}  // namespace

double dice(const PixelGrid& a, const PixelGrid& b) { return dice_of(overlap(a, b)); }

double dice_macro(std::span<const OverlapCounts> images) {
    if (images.empty()) throw Error(ErrorKind::empty_sample, "no images to average Dice over");
    double sum = 0.0;
    for (const auto& c : images) sum += dice_of(c);
    return sum / static_cast<double>(images.size());
}

double dice_micro(std::span<const OverlapCounts> images) {
    if (images.empty()) throw Error(ErrorKind::empty_sample, "no images to pool Dice over");
    OverlapCounts total;
    for (const auto& c : images) {
        total.a += c.a;
        total.b += c.b;
        total.both += c.both;
    }
    return dice_of(total);
}

std::size_t intersection_pixels(const NucleusRegion& a, const NucleusRegion& b) {
    if (a.bbox.max_x < b.bbox.min_x || b.bbox.max_x < a.bbox.min_x || a.bbox.max_y < b.bbox.min_y ||
        b.bbox.max_y < a.bbox.min_y) {
        return 0;
    }
    std::size_t shared = 0;
    std::size_t i = 0, j = 0;
    const auto& ra = a.runs;
    const auto& rb = b.runs;
    while (i < ra.size() && j < rb.size()) {
        if (ra[i].y != rb[j].y) {
            if (ra[i].y < rb[j].y) ++i; else ++j;
            continue;
        }
        const int lo = std::max(ra[i].x_begin, rb[j].x_begin);
        const int hi = std::min(ra[i].x_end, rb[j].x_end);
        if (hi >= lo) shared += static_cast<std::size_t>(hi - lo + 1);
        if (ra[i].x_end < rb[j].x_end) ++i; else ++j;
    }
    return shared;
}

MatchReport match_objects(std::span<const NucleusRegion> pred, std::span<const NucleusRegion> gt,
                          double iou_min) {
    std::vector<MatchPair> candidates;
    for (const auto& p : pred) {
        for (const auto& g : gt) {
            const std::size_t inter = intersection_pixels(p, g);
            if (inter == 0) continue;
            const double iou = static_cast<double>(inter) /
                               static_cast<double>(p.pixel_count + g.pixel_count - inter);
            if (iou >= iou_min) candidates.push_back({p.id, g.id, iou});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const MatchPair& a, const MatchPair& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.pred_id != b.pred_id) return a.pred_id < b.pred_id;
        return a.gt_id < b.gt_id;
    });

    MatchReport report;
    std::unordered_set<Label> used_pred, used_gt;
    for (const auto& c : candidates) {
        if (used_pred.contains(c.pred_id) || used_gt.contains(c.gt_id)) continue;
        used_pred.insert(c.pred_id);
        used_gt.insert(c.gt_id);
        report.pairs.push_back(c);
    }
    report.tp = report.pairs.size();
    report.fp = pred.size() - report.tp;
    report.fn = gt.size() - report.tp;
    report.no_predictions = pred.empty();
    report.no_ground_truth = gt.empty();
    if (!pred.empty()) report.precision = static_cast<double>(report.tp) / static_cast<double>(pred.size());
    if (!gt.empty()) report.recall = static_cast<double>(report.tp) / static_cast<double>(gt.size());
    if (report.precision + report.recall > 0.0) {
        report.f1 = 2.0 * report.precision * report.recall / (report.precision + report.recall);
    }
    return report;
}

double rmse(std::span<const double> pred, std::span<const double> ref) {
    if (pred.size() != ref.size()) {
        throw Error(ErrorKind::dimension_mismatch, "RMSE inputs differ in length: " + std::to_string(pred.size()) +
                                                       " vs " + std::to_string(ref.size()));
    }
    if (pred.empty()) throw Error(ErrorKind::empty_sample, "RMSE of empty vectors");
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - ref[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(pred.size()));
}

}  // namespace nucmorph
