#include <map>

#include "cli.hpp"
#include "common.hpp"
#include "nucmorph/data_io.hpp"
#include "nucmorph/format.hpp"
#include "nucmorph/seg_eval.hpp"

namespace nucmorph::cli {

namespace {

std::map<std::string, std::filesystem::path> images_in(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::io, dir.string() + ": not a directory");
    std::map<std::string, std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext != ".png" && ext != ".json") continue;
        const std::string id = entry.path().stem().string();
        if (!out.emplace(id, entry.path()).second) {
            throw Error(ErrorKind::schema, dir.string() + ": image '" + id + "' present as both .png and .json");
        }
    }
    return out;
}

struct ImageResult {
    OverlapCounts overlap;
    double dice = 0.0;
    MatchReport match;
    std::optional<RoiFeatureSet> pred_features;
    std::optional<RoiFeatureSet> gt_features;
};

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

int cmd_seg_eval(const SegEvalOptions& opt, std::ostream& out, std::ostream& err) {
    opt.filter.validate();
    if (!(opt.iou_min > 0.0 && opt.iou_min <= 1.0)) throw Error(ErrorKind::invalid_argument, "--iou-min must be in (0, 1]");
    const auto preds = images_in(opt.pred);
    const auto gts = images_in(opt.gt);

    std::vector<std::string> ids;
    std::vector<std::string> unpaired;
    for (const auto& [id, path] : gts) {
        if (preds.count(id)) {
            ids.push_back(id);
        } else {
            unpaired.push_back("gt:" + id);
        }
    }
    for (const auto& [id, path] : preds) {
        if (!gts.count(id)) unpaired.push_back("pred:" + id);
    }
    for (const auto& u : unpaired) err << "warning: unpaired image " << u << " excluded\n";
    if (ids.empty()) throw Error(ErrorKind::io, "no paired images between " + opt.pred.string() + " and " + opt.gt.string());

    std::vector<ImageResult> results(ids.size());
    parallel_for(ids.size(), opt.threads, [&](std::size_t i) {
        const auto& gt_path = gts.at(ids[i]);
        const auto& pred_path = preds.at(ids[i]);
        const PixelGrid gt = load_roi(gt_path, opt.mpp, opt.mask_mode);
        std::optional<double> pred_mpp = opt.mpp;
        if (!pred_mpp && pred_path.extension() == ".png") pred_mpp = gt.mpp();
        const PixelGrid pred = load_roi(pred_path, pred_mpp, opt.mask_mode);
        if (pred.width() != gt.width() || pred.height() != gt.height()) {
            throw Error(ErrorKind::dimension_mismatch, ids[i] + ": prediction is " + std::to_string(pred.width()) +
                                                           "x" + std::to_string(pred.height()) +
                                                           ", ground truth " + std::to_string(gt.width()) + "x" +
                                                           std::to_string(gt.height()));
        }
        ImageResult& r = results[i];
        r.overlap = overlap(pred, gt);
        r.dice = dice(pred, gt);
        const auto pred_regions = region_properties(pred);
        const auto gt_regions = region_properties(gt);
        r.match = match_objects(pred_regions, gt_regions, opt.iou_min);
        try {
            r.pred_features = roi_features(pred_regions, opt.filter);
        } catch (const Error&) {
        }
        try {
            r.gt_features = roi_features(gt_regions, opt.filter);
        } catch (const Error&) {
        }
    });

    Manifest manifest("seg-eval");
    for (const auto& id : ids) {
        manifest.add_input(preds.at(id));
        manifest.add_input(gts.at(id));
    }
    manifest.config() = {{"mpp", opt.mpp ? json(*opt.mpp) : json(nullptr)},
                         {"mask_mode", opt.mask_mode == MaskMode::binary ? "binary" : "label"},
                         {"iou_min", opt.iou_min},
                         {"strict", opt.strict},
                         {"filter", filter_config_json(opt.filter)}};

    std::vector<OverlapCounts> overlaps;
    std::size_t tp = 0, fp = 0, fn = 0;
    double f1_sum = 0.0, p_sum = 0.0, r_sum = 0.0;
    json images = json::array();
    std::string csv = csv_line({"image_id", "dice", "tp", "fp", "fn", "precision", "recall", "f1"});
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto& r = results[i];
        overlaps.push_back(r.overlap);
        tp += r.match.tp;
        fp += r.match.fp;
        fn += r.match.fn;
        f1_sum += r.match.f1;
        p_sum += r.match.precision;
        r_sum += r.match.recall;
        images.push_back({{"image_id", ids[i]},
                          {"dice", r.dice},
                          {"tp", r.match.tp},
                          {"fp", r.match.fp},
                          {"fn", r.match.fn},
                          {"precision", r.match.precision},
                          {"recall", r.match.recall},
                          {"f1", r.match.f1},
                          {"no_predictions", r.match.no_predictions},
                          {"no_ground_truth", r.match.no_ground_truth}});
        csv += csv_line({ids[i], format_double(r.dice), std::to_string(r.match.tp), std::to_string(r.match.fp),
                         std::to_string(r.match.fn), format_double(r.match.precision),
                         format_double(r.match.recall), format_double(r.match.f1)});
    }
    const double n = static_cast<double>(ids.size());
    const double micro_p = ratio(tp, tp + fp);
    const double micro_r = ratio(tp, tp + fn);
    const double micro_f1 = ratio(2 * tp, 2 * tp + fp + fn);

    json rmse_table = json::array();
    std::vector<std::string> names;
    std::vector<std::vector<double>> pv, gv;
    for (const auto& r : results) {
        if (!r.pred_features || !r.gt_features) continue;
        const auto a = named_values(*r.pred_features);
        const auto b = named_values(*r.gt_features);
        if (names.empty()) {
            for (const auto& [name, v] : a) names.push_back(name);
            pv.resize(names.size());
            gv.resize(names.size());
        }
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k].second && b[k].second) {
                pv[k].push_back(*a[k].second);
                gv[k].push_back(*b[k].second);
            }
        }
    }
    for (std::size_t k = 0; k < names.size(); ++k) {
        rmse_table.push_back({{"parameter", names[k]},
                              {"rmse", pv[k].empty() ? json(nullptr) : json(rmse(pv[k], gv[k]))},
                              {"n_images", pv[k].size()}});
    }

    json report = {{"manifest", manifest.to_json()},
                   {"images", std::move(images)},
                   {"unpaired", unpaired},
                   {"macro", {{"dice", dice_macro(overlaps)}, {"precision", p_sum / n}, {"recall", r_sum / n}, {"f1", f1_sum / n}}},
                   {"micro",
                    {{"dice", dice_micro(overlaps)},
                     {"tp", tp},
                     {"fp", fp},
                     {"fn", fn},
                     {"precision", micro_p},
                     {"recall", micro_r},
                     {"f1", micro_f1}}},
                   {"feature_rmse", std::move(rmse_table)}};

    OutputSet outputs(opt.out, opt.force);
    outputs.add_json("seg_eval_report.json", report);
    outputs.add_text("seg_eval_images.csv", csv);
    outputs.commit();

    out << "images " << ids.size() << ": macro Dice " << format_double(dice_macro(overlaps)) << ", micro Dice "
        << format_double(dice_micro(overlaps)) << ", F1 " << format_double(micro_f1) << "\n";
    if (opt.strict && !unpaired.empty()) {
        err << "error: " << unpaired.size() << " unpaired image(s) with --strict\n";
        return exit_input;
    }
    return exit_ok;
}

}  // namespace nucmorph::cli
