#include "cli.hpp"

#include <algorithm>

#include <CLI11.hpp>

#include "common.hpp"
#include "nucmorph/data_io.hpp"

namespace nucmorph::cli {

namespace {

struct FilterFlags {
    double min_area = 7.0;
    std::vector<double> large;
    std::vector<double> indent;
    bool exclude_border = false;

    void attach(CLI::App* app) {
        app->add_option("--min-area-um2", min_area, "Minimum nucleus area in um^2")->capture_default_str();
        app->add_option("--large-threshold", large, "Large-nucleus area threshold in um^2 (repeatable)");
        app->add_option("--indent-threshold", indent, "Indentation solidity threshold (repeatable)");
        app->add_flag("--exclude-border", exclude_border, "Drop nuclei touching the ROI border");
    }

    FilterConfig config() const {
        FilterConfig cfg;
        cfg.min_area_um2 = min_area;
        if (!large.empty()) cfg.large_thresholds_um2 = large;
        if (!indent.empty()) cfg.indent_thresholds = indent;
        cfg.exclude_border_touching = exclude_border;
        return cfg;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nuclear morphometry, prognostic statistics and rater agreement", "nucmorph"};
    app.set_version_flag("--version", NUCMORPH_VERSION);
    app.require_subcommand(1);

    std::optional<double> mpp;
    std::string mask_mode = "binary";
    bool force = false;
    unsigned threads = 1;
    std::filesystem::path out_path;

    // measure
    MeasureOptions mo;
    FilterFlags measure_filter;
    auto* measure = app.add_subcommand("measure", "Morphometric features per ROI and per case");
    measure->add_option("input", mo.input, "Directory of <case>__<roi>.png / .json files");
    measure->add_option("--manifest", mo.manifest, "CSV listing case_id,roi_id,path in ROI order");
    measure->add_option("--mpp", mpp, "Microns per pixel of PNG masks");
    measure->add_option("--mask-mode", mask_mode, "binary or label")->capture_default_str();
    measure->add_option("--threads", threads, "Worker threads")->capture_default_str();
    measure_filter.attach(measure);

    // prognose
    PrognoseOptions po;
    std::string endpoint = "tumor_death_any_time";
    std::vector<double> targets;
    auto* prognose = app.add_subcommand("prognose", "ROC, thresholds, Kaplan-Meier and Cox for one parameter");
    prognose->add_option("--features", po.features, "Features CSV from measure");
    prognose->add_option("--cases", po.cases, "Case table CSV")->required();
    prognose->add_option("--param", po.param,
                         "COLUMN, mitotic_count, hotspot:COLUMN:THRESHOLD, roi_sd:COLUMN or roi_max:COLUMN")
        ->required();
    prognose->add_option("--endpoint", endpoint, "tumor_death_any_time, tumor_death_12mo or overall_death_12mo")
        ->capture_default_str();
    prognose->add_option("--target-sens", targets, "Target sensitivity (repeatable; default 0.769 and 0.538)");
    prognose->add_option("--cutoff", po.cutoffs, "Fixed cut-off to evaluate (repeatable)");
    prognose->add_option("--seed", po.seed, "Bootstrap seed");
    prognose->add_option("--bootstrap-n", po.bootstrap_n, "Bootstrap resamples (0 disables)")->capture_default_str();

    // agree
    AgreeOptions ao;
    std::string weights = "linear";
    auto* agree = app.add_subcommand("agree", "Inter- and intra-rater agreement");
    agree->add_option("--estimates", ao.estimates, "Categorical estimates CSV");
    agree->add_option("--measurements", ao.measurements, "Continuous measurements CSV");
    agree->add_option("--kappa-weights", weights, "linear or quadratic")->capture_default_str();

    // seg-eval
    SegEvalOptions so;
    FilterFlags seg_filter;
    auto* seg = app.add_subcommand("seg-eval", "Dice, object F1 and feature RMSE of predicted masks");
    seg->add_option("--pred", so.pred, "Directory of predicted <image>.png / .json")->required();
    seg->add_option("--gt", so.gt, "Directory of ground-truth <image>.json / .png")->required();
    seg->add_option("--mpp", mpp, "Microns per pixel of PNG masks (default: the paired ground truth's)");
    seg->add_option("--mask-mode", mask_mode, "binary or label")->capture_default_str();
    seg->add_option("--iou-min", so.iou_min, "IoU needed for a match")->capture_default_str();
    seg->add_flag("--strict", so.strict, "Exit 1 when any image is unpaired");
    seg->add_option("--threads", threads, "Worker threads")->capture_default_str();
    seg_filter.attach(seg);

    // overlay
    OverlayOptions oo;
    auto* overlay = app.add_subcommand("overlay", "Draw region boundaries over an image");
    overlay->add_option("--mask", oo.mask, "Mask PNG")->required();
    overlay->add_option("--image", oo.image, "Source PNG image")->required();
    overlay->add_option("--mask-mode", mask_mode, "binary or label")->capture_default_str();

    // synth
    SynthOptions yo;
    auto* synth = app.add_subcommand("synth", "Generate synthetic ROIs with known geometry");
    synth->add_option("--seed", yo.seed, "Generator seed")->required();
    synth->add_option("--case-id", yo.case_id, "Case id used in file names")->capture_default_str();
    synth->add_option("--n-rois", yo.n_rois, "Number of ROIs")->capture_default_str();
    synth->add_option("--width", yo.width)->capture_default_str();
    synth->add_option("--height", yo.height)->capture_default_str();
    synth->add_option("--mpp", yo.mpp)->capture_default_str();
    synth->add_option("--n-nuclei", yo.n_nuclei, "Nuclei per ROI")->capture_default_str();
    synth->add_option("--log-area-mu", yo.log_area_mu, "Mean of log(area / um^2)")->capture_default_str();
    synth->add_option("--log-area-sigma", yo.log_area_sigma, "SD of log(area / um^2)")->capture_default_str();
    synth->add_option("--ecc-min", yo.ecc_min)->capture_default_str();
    synth->add_option("--ecc-max", yo.ecc_max)->capture_default_str();

    // sample
    SampleOptions so2;
    FilterFlags sample_filter;
    auto* sample = app.add_subcommand("sample", "Grid and stratified nucleus sampling on one mask");
    sample->add_option("mask", so2.mask, "Mask PNG")->required();
    sample->add_option("--mpp", mpp, "Microns per pixel");
    sample->add_option("--mask-mode", mask_mode, "binary or label")->capture_default_str();
    sample->add_option("--seed", so2.seed, "Seed for the stratified draw")->required();
    sample->add_option("--cols", so2.cols)->capture_default_str();
    sample->add_option("--rows", so2.rows)->capture_default_str();
    sample->add_option("--min-count", so2.min_count, "Grid sample target")->capture_default_str();
    sample_filter.attach(sample);

    for (auto* sub : {measure, prognose, agree, seg, overlay, synth, sample}) {
        sub->add_option("--out", out_path, sub == overlay ? "Output PNG" : "Output directory")->required();
        sub->add_flag("--force", force, "Overwrite existing outputs");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << NUCMORPH_VERSION << "\n";
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        for (auto* sub : app.get_subcommands()) {
            err << sub->help();
            break;
        }
        return exit_input;
    }

    try {
        const MaskMode mode = parse_mask_mode(mask_mode);
        if (measure->parsed()) {
            if (mo.input.empty() && !mo.manifest) {
                throw Error(ErrorKind::invalid_argument, "measure needs an input directory or --manifest");
            }
            mo.mpp = mpp;
            mo.mask_mode = mode;
            mo.filter = measure_filter.config();
            mo.out = out_path;
            mo.force = force;
            mo.threads = threads;
            return cmd_measure(mo, out, err);
        }
        if (prognose->parsed()) {
            po.endpoint = parse_endpoint(endpoint);
            if (!targets.empty()) po.target_sens = targets;
            po.out = out_path;
            po.force = force;
            return cmd_prognose(po, out, err);
        }
        if (agree->parsed()) {
            ao.weights = parse_kappa_weights(weights);
            ao.out = out_path;
            ao.force = force;
            return cmd_agree(ao, out, err);
        }
        if (seg->parsed()) {
            so.mpp = mpp;
            so.mask_mode = mode;
            so.filter = seg_filter.config();
            so.out = out_path;
            so.force = force;
            so.threads = threads;
            return cmd_seg_eval(so, out, err);
        }
        if (overlay->parsed()) {
            oo.mask_mode = mode;
            oo.out = out_path;
            oo.force = force;
            return cmd_overlay(oo, out, err);
        }
        if (synth->parsed()) {
            yo.out = out_path;
            yo.force = force;
            return cmd_synth(yo, out, err);
        }
        if (sample->parsed()) {
            so2.mpp = mpp;
            so2.mask_mode = mode;
            so2.filter = sample_filter.config();
            so2.out = out_path;
            so2.force = force;
            return cmd_sample(so2, out, err);
        }
    } catch (const Error& e) {
        err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error [io]: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_compute;
    }
    return exit_input;
}

}  // namespace nucmorph::cli
