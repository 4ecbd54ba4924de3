#include <set>

#include "cli.hpp"
#include "common.hpp"
#include "nucmorph/data_io.hpp"
#include "nucmorph/mask_geometry.hpp"

namespace nucmorph::cli {

int cmd_measure(const MeasureOptions& opt, std::ostream& out, std::ostream&) {
    opt.filter.validate();
    const std::vector<ManifestEntry> entries =
        opt.manifest ? load_manifest(*opt.manifest) : scan_directory(opt.input, {".png", ".json"});
    if (entries.empty()) {
        throw Error(ErrorKind::io, (opt.manifest ? opt.manifest->string() : opt.input.string()) +
                                       ": no inputs (expected <case>__<roi>.png or .json files)");
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& e : entries) {
        if (!seen.insert({e.case_id, e.roi_id}).second) {
            throw Error(ErrorKind::schema, e.path.string() + ": ROI " + e.case_id + "/" + e.roi_id + " given twice");
        }
    }

    struct RoiResult {
        std::size_t n_regions = 0;
        RoiFeatureSet features;
    };
    std::vector<RoiResult> results(entries.size());
    parallel_for(entries.size(), opt.threads, [&](std::size_t i) {
        const auto& e = entries[i];
        const PixelGrid grid = load_roi(e.path, opt.mpp, opt.mask_mode);
        try {
            const auto regions = region_properties(grid);
            results[i].n_regions = regions.size();
            results[i].features = roi_features(regions, opt.filter);
        } catch (const Error& err) {
            throw with_context(err, e.path, "measure");
        }
    });

    std::vector<std::string> case_order;
    std::map<std::string, std::vector<std::size_t>> by_case;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto& idx = by_case[entries[i].case_id];
        if (idx.empty()) case_order.push_back(entries[i].case_id);
        idx.push_back(i);
    }

    Manifest manifest("measure");
    if (opt.manifest) manifest.add_input(*opt.manifest);
    for (const auto& e : entries) manifest.add_input(e.path);
    manifest.config() = {{"mpp", opt.mpp ? json(*opt.mpp) : json(nullptr)},
                         {"mask_mode", opt.mask_mode == MaskMode::binary ? "binary" : "label"},
                         {"filter", filter_config_json(opt.filter)}};

    OutputSet outputs(opt.out, opt.force);
    std::vector<CaseFeatureSet> cases;
    std::vector<std::vector<std::string>> roi_ids;
    json case_summaries = json::array();
    for (const auto& case_id : case_order) {
        std::vector<RoiFeatureSet> rois;
        std::vector<std::string> ids;
        for (std::size_t i : by_case[case_id]) {
            rois.push_back(results[i].features);
            ids.push_back(entries[i].roi_id);

            Manifest roi_manifest("measure");
            roi_manifest.add_input(entries[i].path);
            roi_manifest.config() = manifest.config();
            json values = json::object();
            for (const auto& [name, v] : named_values(results[i].features)) values[name] = optional_json(v);
            outputs.add_json("roi/" + case_id + "__" + entries[i].roi_id + ".json",
                             {{"manifest", roi_manifest.to_json()},
                              {"case_id", case_id},
                              {"roi_id", entries[i].roi_id},
                              {"n_regions", results[i].n_regions},
                              {"n_nuclei", results[i].features.n_nuclei},
                              {"features", std::move(values)}});
        }
        cases.push_back(aggregate_case(case_id, rois));
        roi_ids.push_back(ids);
        case_summaries.push_back({{"case_id", case_id}, {"n_rois", ids.size()}, {"n_nuclei", cases.back().n_nuclei}});
    }

    outputs.add_text("features.csv", dump_features(cases, roi_ids));
    outputs.add_json("measure_report.json", {{"manifest", manifest.to_json()}, {"cases", std::move(case_summaries)}});
    outputs.commit();
    out << "measured " << entries.size() << " ROI(s) in " << cases.size() << " case(s) -> "
        << (opt.out / "features.csv").string() << "\n";
    return exit_ok;
}

}  // namespace nucmorph::cli
