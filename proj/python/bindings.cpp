#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <cstring>

#include "nucmorph/biostats.hpp"
#include "nucmorph/data_io.hpp"
#include "nucmorph/error.hpp"
#include "nucmorph/heterogeneity.hpp"
#include "nucmorph/mask_geometry.hpp"
#include "nucmorph/morphometry.hpp"
#include "nucmorph/sampling.hpp"
#include "nucmorph/seg_eval.hpp"
#include "nucmorph/synth.hpp"

namespace py = pybind11;
using namespace nucmorph;

namespace {

using LabelArray = py::array_t<Label, py::array::c_style | py::array::forcecast>;

PixelGrid to_grid(const LabelArray& a, double mpp) {
    if (a.ndim() != 2) throw Error(ErrorKind::invalid_argument, "mask must be a 2-D array");
    const auto h = static_cast<int>(a.shape(0));
    const auto w = static_cast<int>(a.shape(1));
    std::vector<Label> labels(a.data(), a.data() + a.size());
    return PixelGrid(w, h, mpp, std::move(labels));
}

LabelArray to_array(const PixelGrid& g) {
    LabelArray out({static_cast<py::ssize_t>(g.height()), static_cast<py::ssize_t>(g.width())});
    std::memcpy(out.mutable_data(), g.labels().data(), g.size() * sizeof(Label));
    return out;
}

MaskMode parse_mode(const std::string& mode) {
    if (mode == "binary") return MaskMode::binary;
    if (mode == "label") return MaskMode::label;
    throw Error(ErrorKind::invalid_argument, "mask_mode must be 'binary' or 'label'");
}

py::object opt(const std::optional<double>& v) {
    return v ? py::object(py::float_(*v)) : py::object(py::none());
}

py::dict region_dict(const NucleusRegion& r) {
    py::dict d;
    d["id"] = r.id;
    d["pixel_count"] = r.pixel_count;
    d["area_um2"] = r.area_um2;
    d["centroid"] = py::make_tuple(r.centroid.x, r.centroid.y);
    d["eccentricity"] = r.eccentricity;
    d["solidity"] = r.solidity;
    d["touches_border"] = r.touches_border;
    d["bbox"] = py::make_tuple(r.bbox.min_x, r.bbox.min_y, r.bbox.max_x, r.bbox.max_y);
    return d;
}

std::vector<SurvivalRecord> records(const std::vector<double>& times, const std::vector<std::string>& status) {
    if (times.size() != status.size()) throw Error(ErrorKind::dimension_mismatch, "times and status differ in length");
    std::vector<SurvivalRecord> out;
    for (std::size_t i = 0; i < times.size(); ++i) {
        out.push_back({std::to_string(i), times[i], parse_status(status[i])});
    }
    return out;
}

RaterMatrix rater_matrix(const std::vector<std::vector<double>>& rows) {
    RaterMatrix m;
    for (const auto& row : rows) {
        std::vector<std::optional<double>> cells;
        for (double v : row) cells.push_back(std::isnan(v) ? std::nullopt : std::optional<double>(v));
        m.cells.push_back(std::move(cells));
    }
    return m;
}

py::dict cox_dict(const CoxFit& f) {
    py::dict d;
    d["converged"] = f.converged;
    d["diverged"] = f.diverged;
    d["divergence_direction"] = f.divergence_direction;
    d["coefficient"] = opt(f.coefficient);
    d["hazard_ratio"] = opt(f.hazard_ratio);
    d["se"] = opt(f.se);
    d["ci95_lo"] = opt(f.ci95_lo);
    d["ci95_hi"] = opt(f.ci95_hi);
    d["p_value"] = opt(f.p_value);
    d["iterations"] = f.iterations;
    d["n_events"] = f.n_events;
    return d;
}

}  // namespace

PYBIND11_MODULE(_nucmorph, m) {
    m.doc() = "Nuclear morphometry, sampling, segmentation scoring and outcome statistics";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = py::reinterpret_borrow<py::object>(error)(e.what());
            inst.attr("kind") = to_string(e.kind());
            PyErr_SetObject(error.ptr(), inst.ptr());
        }
    });

    m.def("label_components", [](const LabelArray& mask) { return to_array(label_components(to_grid(mask, 1.0))); },
          py::arg("mask"), "8-connected labelling; ids dense in raster-scan order.");

    m.def(
        "region_properties",
        [](const LabelArray& labels, double mpp) {
            py::list out;
            for (const auto& r : region_properties(to_grid(labels, mpp))) out.append(region_dict(r));
            return out;
        },
        py::arg("labels"), py::arg("mpp"));

    m.def(
        "roi_features",
        [](const LabelArray& mask, double mpp, const std::string& mask_mode, double min_area_um2) {
            FilterConfig cfg;
            cfg.min_area_um2 = min_area_um2;
            const RoiFeatureSet f = roi_features(to_grid(mask, mpp), cfg, parse_mode(mask_mode));
            py::dict d;
            d["n_nuclei"] = f.n_nuclei;
            for (const auto& [name, value] : named_values(f)) d[py::str(name)] = opt(value);
            return d;
        },
        py::arg("mask"), py::arg("mpp"), py::arg("mask_mode") = "binary", py::arg("min_area_um2") = 7.0);

    m.def(
        "describe",
        [](const std::vector<double>& values) {
            const Descriptive d = describe(values);
            py::dict out;
            out["mean"] = d.mean;
            out["median"] = d.median;
            out["sd"] = opt(d.sd);
            out["p90"] = d.p90;
            out["skewness"] = opt(d.skewness);
            return out;
        },
        py::arg("values"));

    m.def(
        "grid_sample",
        [](const LabelArray& labels, double mpp, std::size_t min_count) {
            const PixelGrid g = to_grid(labels, mpp);
            const auto regions = region_properties(g);
            const SampleResult s = grid_sample(regions, g.width(), g.height(), GridSpec{}, min_count);
            std::vector<std::pair<int, int>> fields;
            for (const auto& f : s.fields_used) fields.emplace_back(f.col, f.row);
            return py::make_tuple(s.selected_region_ids, fields, s.reached_target);
        },
        py::arg("labels"), py::arg("mpp"), py::arg("min_count") = 100,
        "Returns (region ids, (col, row) fields used, reached_target).");

    m.def(
        "stratified_sample_12",
        [](const LabelArray& labels, double mpp, std::uint64_t seed, double min_area_um2) {
            FilterConfig cfg;
            cfg.min_area_um2 = min_area_um2;
            const auto regions = filter_regions(region_properties(to_grid(labels, mpp)), cfg);
            std::vector<Label> ids;
            for (const auto& r : stratified_sample_12(regions, seed)) ids.push_back(r.id);
            return ids;
        },
        py::arg("labels"), py::arg("mpp"), py::arg("seed"), py::arg("min_area_um2") = 7.0);

    m.def(
        "dice", [](const LabelArray& a, const LabelArray& b) { return dice(to_grid(a, 1.0), to_grid(b, 1.0)); },
        py::arg("a"), py::arg("b"));

    m.def(
        "match_objects",
        [](const LabelArray& pred, const LabelArray& gt, double iou_min) {
            const auto p = region_properties(to_grid(pred, 1.0));
            const auto g = region_properties(to_grid(gt, 1.0));
            const MatchReport r = match_objects(p, g, iou_min);
            py::dict d;
            d["tp"] = r.tp;
            d["fp"] = r.fp;
            d["fn"] = r.fn;
            d["precision"] = r.precision;
            d["recall"] = r.recall;
            d["f1"] = r.f1;
            d["no_predictions"] = r.no_predictions;
            d["no_ground_truth"] = r.no_ground_truth;
            py::list pairs;
            for (const auto& x : r.pairs) pairs.append(py::make_tuple(x.pred_id, x.gt_id, x.iou));
            d["pairs"] = pairs;
            return d;
        },
        py::arg("pred"), py::arg("gt"), py::arg("iou_min") = 0.5);

    m.def(
        "roc_auc",
        [](const std::vector<double>& scores, const std::vector<int>& labels) {
            const RocResult r = roc_auc(scores, labels);
            std::vector<std::tuple<double, double, double>> pts;
            for (const auto& p : r.points) pts.emplace_back(p.threshold, p.fpr, p.tpr);
            return py::make_tuple(r.auc, pts);
        },
        py::arg("scores"), py::arg("labels"), "Returns (auc, [(threshold, fpr, tpr), ...]).");

    m.def(
        "bootstrap_auc_ci",
        [](const std::vector<double>& scores, const std::vector<int>& labels, std::size_t n, std::uint64_t seed) {
            const BootstrapInterval b = bootstrap_auc_ci(scores, labels, n, seed);
            return py::make_tuple(b.lo, b.hi);
        },
        py::arg("scores"), py::arg("labels"), py::arg("n_resamples"), py::arg("seed"));

    m.def(
        "confusion_metrics",
        [](std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
            const ConfusionRates c = confusion_metrics(tp, fp, fn, tn);
            py::dict d;
            d["sensitivity"] = c.sensitivity;
            d["specificity"] = opt(c.specificity);
            d["precision"] = opt(c.precision);
            d["false_omission_rate"] = opt(c.false_omission_rate);
            return d;
        },
        py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"));

    m.def(
        "threshold_at_sensitivity",
        [](const std::vector<double>& scores, const std::vector<int>& labels, double target) {
            const ThresholdResult t = threshold_at_sensitivity(scores, labels, target);
            py::dict d;
            d["threshold"] = t.threshold;
            d["tp"] = t.tp;
            d["fn"] = t.fn;
            d["fp"] = t.fp;
            d["tn"] = t.tn;
            return d;
        },
        py::arg("scores"), py::arg("labels"), py::arg("target_sensitivity"));

    m.def(
        "kaplan_meier",
        [](const std::vector<double>& times, const std::vector<std::string>& status) {
            std::vector<std::tuple<double, std::size_t, std::size_t, std::size_t, double>> out;
            for (const auto& s : kaplan_meier(records(times, status), EventDefinition{})) {
                out.emplace_back(s.time, s.n_at_risk, s.n_events, s.n_censored, s.survival);
            }
            return out;
        },
        py::arg("times"), py::arg("status"),
        "Tumor deaths are events. Returns [(time, at_risk, events, censored, survival), ...].");

    m.def(
        "cox_univariate",
        [](const std::vector<double>& times, const std::vector<std::string>& status, const std::vector<double>& x) {
            return cox_dict(cox_univariate(records(times, status), x, EventDefinition{}));
        },
        py::arg("times"), py::arg("status"), py::arg("covariate"));

    m.def(
        "cohen_kappa_weighted",
        [](const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& categories,
           bool quadratic) {
            return cohen_kappa_weighted(a, b, categories, quadratic ? KappaWeights::quadratic : KappaWeights::linear);
        },
        py::arg("rater1"), py::arg("rater2"), py::arg("categories"), py::arg("quadratic") = false);

    m.def(
        "lights_kappa",
        [](const std::vector<std::vector<double>>& rows, const std::vector<int>& categories) {
            return lights_kappa(rater_matrix(rows), categories).kappa;
        },
        py::arg("ratings"), py::arg("categories"), "Rows are cases, columns raters; NaN marks a missing rating.");

    m.def(
        "icc_2_1",
        [](const std::vector<std::vector<double>>& rows) {
            const IccResult r = icc_2_1(rater_matrix(rows));
            return py::make_tuple(opt(r.icc), opt(r.ci95_lo), opt(r.ci95_hi));
        },
        py::arg("values"), "Returns (icc, ci95_lo, ci95_hi).");

    m.def(
        "death_probability_table",
        [](const std::vector<std::tuple<std::size_t, std::size_t, bool>>& cases) {
            std::vector<HotspotCase> in;
            for (const auto& [h, n, death] : cases) {
                HotspotCase c;
                c.case_id = std::to_string(in.size());
                c.hotspots = h;
                c.rois = n;
                c.tumor_death = death;
                in.push_back(c);
            }
            std::vector<std::tuple<std::string, std::size_t, std::size_t, double>> out;
            for (const auto& b : death_probability_table(in)) {
                out.emplace_back(b.label, b.tumor_deaths, b.other, b.death_probability);
            }
            return out;
        },
        py::arg("cases"), "cases: [(hotspots, rois, tumor_death)]; returns [(bucket, deaths, other, probability)].");

    m.def(
        "generate_roi",
        [](std::uint64_t seed, int width, int height, std::size_t n_nuclei, double mpp) {
            SynthSpec spec;
            spec.seed = seed;
            spec.width = width;
            spec.height = height;
            spec.n_nuclei = n_nuclei;
            spec.mpp = mpp;
            const SynthRoi roi = generate_roi(spec);
            py::list truth;
            for (const auto& n : roi.truth) {
                py::dict d;
                d["label"] = n.label;
                d["center"] = py::make_tuple(n.center.x, n.center.y);
                d["semi_major"] = n.semi_major;
                d["semi_minor"] = n.semi_minor;
                d["angle"] = n.angle;
                d["area_um2"] = n.area_um2;
                d["eccentricity"] = n.eccentricity;
                truth.append(d);
            }
            return py::make_tuple(to_array(roi.labels), truth);
        },
        py::arg("seed"), py::arg("width") = 400, py::arg("height") = 300, py::arg("n_nuclei") = 50,
        py::arg("mpp") = 0.25, "Returns (labels, truth records).");
}
