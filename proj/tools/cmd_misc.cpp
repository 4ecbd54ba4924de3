#include <algorithm>

#include "cli.hpp"
#include "common.hpp"
#include "nucmorph/data_io.hpp"
#include "nucmorph/format.hpp"
#include "nucmorph/rng.hpp"
#include "nucmorph/sampling.hpp"
#include "nucmorph/synth.hpp"

namespace nucmorph::cli {

namespace {

const char* mode_name(MaskMode m) { return m == MaskMode::binary ? "binary" : "label"; }

bool on_boundary(const PixelGrid& g, int x, int y) {
    const Label v = g.at(x, y);
    static constexpr int dx[] = {1, -1, 0, 0};
    static constexpr int dy[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k];
        const int ny = y + dy[k];
        if (!g.contains(nx, ny) || g.at(nx, ny) != v) return true;
    }
    return false;
}

std::optional<double> sample_sd(const std::vector<double>& v) {
    if (v.size() < 2) return std::nullopt;
    return describe(v).sd;
}

}  // namespace

int cmd_overlay(const OverlayOptions& opt, std::ostream& out, std::ostream&) {
    const PixelGrid mask = load_mask(opt.mask, 1.0, opt.mask_mode).grid;
    Image8 image = load_image(opt.image);
    if (image.width != mask.width() || image.height != mask.height()) {
        throw Error(ErrorKind::dimension_mismatch, "mask is " + std::to_string(mask.width()) + "x" +
                                                       std::to_string(mask.height()) + " but image is " +
                                                       std::to_string(image.width) + "x" +
                                                       std::to_string(image.height));
    }
    std::size_t painted = 0;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (mask.at(x, y) == 0 || !on_boundary(mask, x, y)) continue;
            std::uint8_t* px = image.data.data() +
                               (static_cast<std::size_t>(y) * image.width + static_cast<std::size_t>(x)) * image.channels;
            if (image.channels >= 3) {
                px[0] = 0;
                px[1] = 255;
                px[2] = 0;
            } else {
                px[0] = 255;
            }
            ++painted;
        }
    }

    Manifest manifest("overlay");
    manifest.add_input(opt.mask);
    manifest.add_input(opt.image);
    manifest.config() = {{"mask_mode", mode_name(opt.mask_mode)}};
    const auto dir = opt.out.parent_path();
    OutputSet outputs(dir, opt.force);
    outputs.add_writer(opt.out.filename().string(), [&](const std::filesystem::path& p) { save_image(p, image); });
    outputs.add_json(opt.out.filename().string() + ".json",
                     {{"manifest", manifest.to_json()}, {"boundary_pixels", painted}});
    outputs.commit();
    out << "painted " << painted << " boundary pixel(s) -> " << opt.out.string() << "\n";
    return exit_ok;
}

int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream&) {
    if (opt.n_rois == 0) throw Error(ErrorKind::invalid_argument, "--n-rois must be >= 1");
    if (opt.case_id.empty() || opt.case_id.find("__") != std::string::npos) {
        throw Error(ErrorKind::invalid_argument, "--case-id must be non-empty and must not contain '__'");
    }
    Manifest manifest("synth");
    manifest.config() = {{"seed", opt.seed},         {"case_id", opt.case_id},
                         {"n_rois", opt.n_rois},     {"width", opt.width},
                         {"height", opt.height},     {"mpp", opt.mpp},
                         {"n_nuclei", opt.n_nuclei}, {"log_area_mu", opt.log_area_mu},
                         {"log_area_sigma", opt.log_area_sigma}, {"ecc_min", opt.ecc_min},
                         {"ecc_max", opt.ecc_max}};

    OutputSet outputs(opt.out, opt.force);
    std::string truth = csv_line({"case_id", "roi_id", "label", "center_x", "center_y", "semi_major_px",
                                  "semi_minor_px", "angle", "area_um2", "eccentricity"});
    std::vector<SynthRoi> rois;
    rois.reserve(opt.n_rois);
    for (std::size_t r = 0; r < opt.n_rois; ++r) {
        SynthSpec spec;
        spec.width = opt.width;
        spec.height = opt.height;
        spec.mpp = opt.mpp;
        spec.n_nuclei = opt.n_nuclei;
        spec.log_area_mu = opt.log_area_mu;
        spec.log_area_sigma = opt.log_area_sigma;
        spec.ecc_min = opt.ecc_min;
        spec.ecc_max = opt.ecc_max;
        spec.seed = derive_seed(opt.seed, r);
        rois.push_back(generate_roi(spec));
    }
    for (std::size_t r = 0; r < rois.size(); ++r) {
        const std::string roi_id = "roi" + std::to_string(r + 1);
        const std::string stem = opt.case_id + "__" + roi_id;
        const SynthRoi& roi = rois[r];
        outputs.add_writer("masks/" + stem + ".png",
                           [&roi](const std::filesystem::path& p) { save_mask(p, roi.labels, MaskMode::label); });
        AnnotationSet set;
        set.image = {stem, opt.width, opt.height, opt.mpp};
        for (const auto& n : roi.truth) {
            set.annotations.push_back(ellipse_polygon(n));
            truth += csv_line({opt.case_id, roi_id, std::to_string(n.label), format_double(n.center.x),
                               format_double(n.center.y), format_double(n.semi_major), format_double(n.semi_minor),
                               format_double(n.angle), format_double(n.area_um2), format_double(n.eccentricity)});
        }
        outputs.add_text("annotations/" + stem + ".json", dump_annotations(set));
    }
    outputs.add_text("truth.csv", truth);
    outputs.add_json("synth_report.json", {{"manifest", manifest.to_json()}});
    outputs.commit();
    out << "wrote " << opt.n_rois << " synthetic ROI(s) to " << opt.out.string() << "\n";
    return exit_ok;
}

int cmd_sample(const SampleOptions& opt, std::ostream& out, std::ostream&) {
    opt.filter.validate();
    if (!opt.mpp) throw Error(ErrorKind::invalid_argument, "--mpp is required");
    const PixelGrid grid = load_mask(opt.mask, *opt.mpp, opt.mask_mode).grid;
    const auto regions = filter_regions(region_properties(grid), opt.filter);

    std::vector<NucleusRegion> eligible;
    for (const auto& r : regions) {
        if (!r.touches_border) eligible.push_back(r);
    }
    std::vector<double> all_areas;
    for (const auto& r : eligible) all_areas.push_back(r.area_um2);

    GridSpec spec{opt.cols, opt.rows};
    const SampleResult grid_result = grid_sample(regions, grid.width(), grid.height(), spec, opt.min_count);
    const auto strat = stratified_sample_12(eligible, opt.seed);

    std::vector<double> grid_areas;
    for (Label id : grid_result.selected_region_ids) {
        const auto it = std::lower_bound(regions.begin(), regions.end(), id,
                                         [](const NucleusRegion& r, Label v) { return r.id < v; });
        grid_areas.push_back(it->area_um2);
    }
    std::vector<double> strat_areas;
    std::vector<Label> strat_ids;
    for (const auto& r : strat) {
        strat_areas.push_back(r.area_um2);
        strat_ids.push_back(r.id);
    }
    json fields = json::array();
    for (const auto& f : grid_result.fields_used) {
        fields.push_back({{"col", f.col}, {"row", f.row}, {"x0", f.x0}, {"y0", f.y0}, {"x1", f.x1}, {"y1", f.y1}});
    }

    Manifest manifest("sample");
    manifest.add_input(opt.mask);
    manifest.config() = {{"mpp", *opt.mpp},   {"mask_mode", mode_name(opt.mask_mode)},
                         {"seed", opt.seed},  {"cols", opt.cols},
                         {"rows", opt.rows},  {"min_count", opt.min_count},
                         {"filter", filter_config_json(opt.filter)}};
    json report = {{"manifest", manifest.to_json()},
                   {"n_eligible", eligible.size()},
                   {"population_area_sd", optional_json(sample_sd(all_areas))},
                   {"grid",
                    {{"selected_region_ids", grid_result.selected_region_ids},
                     {"fields_used", std::move(fields)},
                     {"reached_target", grid_result.reached_target},
                     {"area_sd", optional_json(sample_sd(grid_areas))}}},
                   {"stratified_12", {{"selected_region_ids", strat_ids}, {"area_sd", optional_json(sample_sd(strat_areas))}}}};

    OutputSet outputs(opt.out, opt.force);
    outputs.add_json("sample_report.json", report);
    outputs.commit();
    out << "grid sample: " << grid_result.selected_region_ids.size() << " nuclei from "
        << grid_result.fields_used.size() << " field(s); stratified sample: " << strat.size() << " nuclei\n";
    return exit_ok;
}

}  // namespace nucmorph::cli
