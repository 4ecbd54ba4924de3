#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "common.hpp"
#include "nucmorph/data_io.hpp"
#include "nucmorph/format.hpp"
#include "nucmorph/heterogeneity.hpp"

namespace nucmorph::cli {

namespace {

enum class ParamKind { column, mitotic_count, hotspot, roi_sd, roi_max };

struct ParamSpec {
    ParamKind kind = ParamKind::column;
    std::string column;
    double threshold = 0.0;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) parts.push_back(part);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

ParamSpec parse_param(const std::string& text) {
    const auto parts = split(text, ':');
    ParamSpec p;
    if (text == "mitotic_count") {
        p.kind = ParamKind::mitotic_count;
    } else if (parts.size() == 3 && parts[0] == "hotspot" && !parts[1].empty()) {
        p.kind = ParamKind::hotspot;
        p.column = parts[1];
        p.threshold = parse_number(parts[2], "hotspot threshold");
    } else if (parts.size() == 2 && (parts[0] == "roi_sd" || parts[0] == "roi_max") && !parts[1].empty()) {
        p.kind = parts[0] == "roi_sd" ? ParamKind::roi_sd : ParamKind::roi_max;
        p.column = parts[1];
    } else if (parts.size() == 1 && !text.empty()) {
        p.column = text;
    } else {
        throw Error(ErrorKind::invalid_argument,
                    "cannot parse --param '" + text +
                        "' (expected COLUMN, mitotic_count, hotspot:COLUMN:THRESHOLD, roi_sd:COLUMN or "
                        "roi_max:COLUMN)");
    }
    return p;
}

json threshold_json(const ThresholdResult& t) {
    json j = rates_json(t.rates);
    j["threshold"] = t.threshold;
    j["tp"] = t.tp;
    j["fn"] = t.fn;
    j["fp"] = t.fp;
    j["tn"] = t.tn;
    return j;
}

json cox_json(std::span<const SurvivalRecord> records, std::span<const double> covariate,
              const EventDefinition& events) {
    try {
        const CoxFit fit = cox_univariate(records, covariate, events);
        return {{"converged", fit.converged},
                {"diverged", fit.diverged},
                {"divergence_direction", fit.divergence_direction},
                {"coefficient", optional_json(fit.coefficient)},
                {"hazard_ratio", optional_json(fit.hazard_ratio)},
                {"se", optional_json(fit.se)},
                {"ci95_lo", optional_json(fit.ci95_lo)},
                {"ci95_hi", optional_json(fit.ci95_hi)},
                {"p_value", optional_json(fit.p_value)},
                {"iterations", fit.iterations},
                {"n_events", fit.n_events}};
    } catch (const Error& e) {
        return {{"error", e.what()}, {"error_kind", to_string(e.kind())}};
    }
}

std::string label_of(double v) { return format_double(v); }

}  // namespace

int cmd_prognose(const PrognoseOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.bootstrap_n > 0 && !opt.seed) {
        throw Error(ErrorKind::invalid_argument, "--seed is required when --bootstrap-n > 0");
    }
    for (double t : opt.target_sens) {
        if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorKind::invalid_argument, "--target-sens must be in (0, 1]");
    }
    const ParamSpec param = parse_param(opt.param);
    const bool needs_features = param.kind != ParamKind::mitotic_count;
    const bool roi_derived = param.kind != ParamKind::mitotic_count;

    Manifest manifest("prognose");
    manifest.add_input(opt.cases);
    const std::vector<CaseRecord> cases = load_case_table(opt.cases);

    // Case score and (for ROI-derived parameters) per-ROI values.
    std::map<std::string, std::optional<double>> score_of;
    std::map<std::string, std::vector<double>> roi_values_of;
    std::vector<std::string> dropped_roi_values;
    std::set<std::string> feature_cases;
    if (needs_features) {
        if (opt.features.empty()) throw Error(ErrorKind::invalid_argument, "--features is required for this --param");
        manifest.add_input(opt.features);
        const FeatureTable ft = load_features(opt.features);
        const auto col = ft.parameter_index(param.column);
        if (!col) {
            std::string avail;
            for (const auto& p : ft.parameters) avail += (avail.empty() ? "" : ", ") + p;
            throw Error(ErrorKind::invalid_argument, opt.features.string() + ": no parameter '" + param.column +
                                                         "' (available: " + avail + ")");
        }
        for (const auto& row : ft.rows) {
            feature_cases.insert(row.case_id);
            const auto& v = row.values[*col];
            if (row.level == "case") {
                if (score_of.count(row.case_id) && param.kind == ParamKind::column) {
                    throw Error(ErrorKind::schema, opt.features.string() + ": case '" + row.case_id +
                                                       "' has more than one case row");
                }
                if (param.kind == ParamKind::column) score_of[row.case_id] = v;
            } else {
                auto& vals = roi_values_of[row.case_id];
                if (v) {
                    vals.push_back(*v);
                } else {
                    dropped_roi_values.push_back(row.case_id + "/" + row.roi_id);
                }
            }
        }
        if (param.kind != ParamKind::column) {
            for (const auto& [case_id, vals] : roi_values_of) {
                std::optional<double> s;
                if (param.kind == ParamKind::hotspot && !vals.empty()) {
                    s = hotspot_fraction(vals, param.threshold);
                } else if (param.kind == ParamKind::roi_max && !vals.empty()) {
                    s = *std::max_element(vals.begin(), vals.end());
                } else if (param.kind == ParamKind::roi_sd && vals.size() >= 2) {
                    s = roi_variability(vals).sd;
                }
                score_of[case_id] = s;
            }
        }
    }

    std::vector<std::string> cases_without_features;
    std::vector<std::string> cases_without_score;
    std::vector<SurvivalRecord> records;
    std::vector<double> scores;
    std::vector<int> labels;
    std::vector<CaseRoiValues> roi_cases;
    std::set<std::string> case_ids;
    for (const auto& c : cases) {
        case_ids.insert(c.case_id);
        std::optional<double> s;
        if (param.kind == ParamKind::mitotic_count) {
            s = c.mitotic_count;
        } else {
            const auto it = score_of.find(c.case_id);
            if (it == score_of.end() && !feature_cases.count(c.case_id)) {
                cases_without_features.push_back(c.case_id);
                continue;
            }
            if (it != score_of.end()) s = it->second;
        }
        if (!s) {
            cases_without_score.push_back(c.case_id);
            continue;
        }
        records.push_back(c.outcome);
        scores.push_back(*s);
        labels.push_back(endpoint_positive(c.outcome, opt.endpoint) ? 1 : 0);
        if (roi_derived) {
            CaseRoiValues rv{c.case_id, roi_values_of[c.case_id], labels.back() != 0};
            if (param.kind == ParamKind::hotspot) {
                for (double& v : rv.values) v = v >= param.threshold ? 1.0 : 0.0;
            }
            roi_cases.push_back(std::move(rv));
        }
    }
    std::vector<std::string> features_without_case;
    for (const auto& id : feature_cases) {
        if (!case_ids.count(id)) features_without_case.push_back(id);
    }
    for (const auto& id : cases_without_features) err << "warning: case '" << id << "' has no feature rows\n";
    for (const auto& id : features_without_case) err << "warning: features for unknown case '" << id << "'\n";
    for (const auto& id : cases_without_score) err << "warning: case '" << id << "' has no value for the parameter\n";

    const std::size_t n_pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    if (n_pos == 0 || n_pos == labels.size()) {
        throw Error(ErrorKind::undefined_auc, "endpoint " + std::string(endpoint_name(opt.endpoint)) +
                                                  " has a single class among the " + std::to_string(labels.size()) +
                                                  " analysed cases");
    }

    manifest.config() = {{"param", opt.param},
                         {"endpoint", endpoint_name(opt.endpoint)},
                         {"target_sens", opt.target_sens},
                         {"cutoffs", opt.cutoffs},
                         {"seed", opt.seed ? json(*opt.seed) : json(nullptr)},
                         {"bootstrap_n", opt.bootstrap_n}};

    const RocResult roc = roc_auc(scores, labels);
    json report;
    report["manifest"] = manifest.to_json();
    report["n_cases"] = scores.size();
    report["n_positive"] = roc.n_positive;
    report["n_negative"] = roc.n_negative;
    report["unmatched"] = {{"cases_without_features", cases_without_features},
                           {"features_without_case", features_without_case},
                           {"cases_without_value", cases_without_score},
                           {"roi_values_undefined", dropped_roi_values}};
    report["auc"] = roc.auc;
    if (opt.bootstrap_n > 0) {
        const BootstrapInterval ci = bootstrap_auc_ci(scores, labels, opt.bootstrap_n, *opt.seed);
        report["auc_ci95"] = {{"lo", ci.lo}, {"hi", ci.hi}, {"n_resamples", ci.n_resamples}};
    } else {
        report["auc_ci95"] = nullptr;
    }

    struct Dichotomy {
        std::string name;
        ThresholdResult result;
        std::optional<double> target;
    };
    std::vector<Dichotomy> dichotomies;
    for (double t : opt.target_sens) {
        dichotomies.push_back({"target_sens_" + label_of(t), threshold_at_sensitivity(scores, labels, t), t});
    }
    for (double c : opt.cutoffs) dichotomies.push_back({"cutoff_" + label_of(c), classify_at(scores, labels, c), {}});

    const EventDefinition events = endpoint_events(opt.endpoint);
    std::string km_csv = csv_line({"dichotomy", "group", "time", "n_at_risk", "n_events", "n_censored", "survival"});
    json dich_json = json::array();
    for (const auto& d : dichotomies) {
        std::vector<double> indicator;
        std::vector<SurvivalRecord> above, below;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            const bool hi = scores[i] >= d.result.threshold;
            indicator.push_back(hi ? 1.0 : 0.0);
            (hi ? above : below).push_back(records[i]);
        }
        for (const auto& [group, recs] : {std::pair{"above", &above}, std::pair{"below", &below}}) {
            if (recs->empty()) continue;
            for (const auto& s : kaplan_meier(*recs, events)) {
                km_csv += csv_line({d.name, group, format_double(s.time), std::to_string(s.n_at_risk),
                                    std::to_string(s.n_events), std::to_string(s.n_censored),
                                    format_double(s.survival)});
            }
        }
        json j = threshold_json(d.result);
        j["name"] = d.name;
        j["target_sensitivity"] = optional_json(d.target);
        j["n_above"] = above.size();
        j["n_below"] = below.size();
        j["cox"] = cox_json(records, indicator, events);
        dich_json.push_back(std::move(j));
    }
    report["dichotomies"] = std::move(dich_json);
    report["cox_continuous"] = cox_json(records, scores, events);
    report["survival_events"] = {{"tumor_death", events.tumor_death}, {"other_death", events.other_death}};

    OutputSet outputs(opt.out, opt.force);
    std::string roc_csv = csv_line({"threshold", "fpr", "tpr"});
    for (const auto& p : roc.points) {
        roc_csv += csv_line({format_double(p.threshold), format_double(p.fpr), format_double(p.tpr)});
    }
    std::string scores_csv = csv_line({"case_id", "score", "positive", "time_months", "status"});
    for (std::size_t i = 0; i < scores.size(); ++i) {
        scores_csv += csv_line({records[i].case_id, format_double(scores[i]), labels[i] ? "1" : "0",
                                format_double(records[i].time_months), to_string(records[i].status)});
    }

    if (roi_derived && !roi_cases.empty()) {
        std::size_t max_rois = 0;
        bool all_have_rois = true;
        for (const auto& c : roi_cases) {
            max_rois = std::max(max_rois, c.values.size());
            all_have_rois = all_have_rois && !c.values.empty();
        }
        if (all_have_rois && param.kind != ParamKind::roi_sd) {
            const RoiAggregation agg = param.kind == ParamKind::roi_max ? RoiAggregation::max : RoiAggregation::mean;
            std::string csv = csv_line({"n_rois", "auc"});
            json arr = json::array();
            for (std::size_t k = 1; k <= max_rois; ++k) {
                const double auc = auc_vs_num_rois(roi_cases, k, agg);
                csv += csv_line({std::to_string(k), format_double(auc)});
                arr.push_back({{"n_rois", k}, {"auc", auc}});
            }
            report["auc_vs_rois"] = std::move(arr);
            outputs.add_text("auc_vs_rois.csv", csv);
        }
    }

    if (param.kind == ParamKind::hotspot) {
        std::vector<HotspotCase> hcs;
        for (const auto& c : roi_cases) {
            const auto hits = static_cast<std::size_t>(std::count(c.values.begin(), c.values.end(), 1.0));
            hcs.push_back({c.case_id, hits, c.values.size(), c.positive});
        }
        std::string csv = csv_line({"bucket", "fraction", "tumor_deaths", "other", "death_probability"});
        json arr = json::array();
        for (const auto& b : death_probability_table(hcs)) {
            csv += csv_line({b.label, format_double(b.fraction), std::to_string(b.tumor_deaths),
                             std::to_string(b.other), format_double(b.death_probability)});
            arr.push_back({{"bucket", b.label},
                           {"fraction", b.fraction},
                           {"tumor_deaths", b.tumor_deaths},
                           {"other", b.other},
                           {"death_probability", b.death_probability}});
        }
        report["hotspot_table"] = std::move(arr);
        outputs.add_text("hotspot_table.csv", csv);
    }

    outputs.add_text("roc.csv", roc_csv);
    outputs.add_text("km.csv", km_csv);
    outputs.add_text("scores.csv", scores_csv);
    outputs.add_json("prognose_report.json", report);
    outputs.commit();

    out << "AUC " << format_double(roc.auc) << " over " << scores.size() << " cases (" << roc.n_positive
        << " positive)\n";
    for (const auto& d : dichotomies) {
        out << d.name << ": threshold " << format_double(d.result.threshold) << " sensitivity "
            << format_double(d.result.rates.sensitivity) << " specificity "
            << format_optional(d.result.rates.specificity) << "\n";
    }
    return exit_ok;
}

}  // namespace nucmorph::cli
