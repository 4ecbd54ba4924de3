#include <algorithm>
#include <map>

#include "cli.hpp"
#include "common.hpp"
#include "nucmorph/data_io.hpp"
#include "nucmorph/format.hpp"

namespace nucmorph::cli {

namespace {

template <class T>
std::vector<std::string> ordered_unique(const std::vector<T>& rows, std::string T::*field) {
    std::vector<std::string> out;
    for (const auto& r : rows) {
        if (std::find(out.begin(), out.end(), r.*field) == out.end()) out.push_back(r.*field);
    }
    return out;
}

std::size_t index_of(const std::vector<std::string>& v, const std::string& s) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), s) - v.begin());
}

json pairwise_json(const std::vector<std::vector<std::optional<double>>>& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& v : row) r.push_back(optional_json(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

json categorical_report(const std::vector<RaterEstimate>& estimates, const std::vector<std::string>& raters,
                        int (*value)(const RaterEstimate&), std::vector<int> categories, KappaWeights weights) {
    std::vector<std::string> cases;
    for (const auto& e : estimates) {
        if (e.timepoint == 1 && std::find(cases.begin(), cases.end(), e.case_id) == cases.end()) {
            cases.push_back(e.case_id);
        }
    }
    RaterMatrix m;
    m.cells.assign(cases.size(), std::vector<std::optional<double>>(raters.size()));
    for (const auto& e : estimates) {
        if (e.timepoint != 1) continue;
        m.cells[index_of(cases, e.case_id)][index_of(raters, e.rater_id)] = value(e);
    }
    json out;
    const LightsKappa lk = lights_kappa(m, categories, weights);
    out["lights_kappa"] = optional_json(lk.kappa);
    out["pairwise"] = pairwise_json(lk.pairwise);
    out["excluded_pairs"] = lk.excluded_pairs;
    out["dropped_cases"] = lk.dropped_rows;
    out["n_cases"] = cases.size() - lk.dropped_rows;

    json intra = json::object();
    for (const auto& r : raters) {
        std::map<std::string, int> first, second;
        for (const auto& e : estimates) {
            if (e.rater_id != r) continue;
            (e.timepoint == 1 ? first : second)[e.case_id] = value(e);
        }
        std::vector<int> a, b;
        for (const auto& c : cases) {
            const auto i = first.find(c);
            const auto j = second.find(c);
            if (i != first.end() && j != second.end()) {
                a.push_back(i->second);
                b.push_back(j->second);
            }
        }
        if (a.empty()) continue;
        intra[r] = {{"kappa", optional_json(cohen_kappa_weighted(a, b, categories, weights))}, {"n_cases", a.size()}};
    }
    out["intra_rater"] = std::move(intra);
    return out;
}

}  // namespace

int cmd_agree(const AgreeOptions& opt, std::ostream& out, std::ostream&) {
    if (!opt.estimates && !opt.measurements) {
        throw Error(ErrorKind::invalid_argument, "agree needs --estimates and/or --measurements");
    }
    Manifest manifest("agree");
    manifest.config() = {{"kappa_weights", opt.weights == KappaWeights::linear ? "linear" : "quadratic"}};
    json report;

    if (opt.estimates) {
        manifest.add_input(*opt.estimates);
        const auto estimates = load_estimates(*opt.estimates);
        const auto raters = ordered_unique(estimates, &RaterEstimate::rater_id);
        if (raters.size() < 2) {
            throw Error(ErrorKind::invalid_argument, opt.estimates->string() + ": agreement needs at least 2 raters (found " +
                                                         std::to_string(raters.size()) + ")");
        }
        report["raters"] = raters;
        report["anisokaryosis"] = categorical_report(
            estimates, raters, [](const RaterEstimate& e) { return e.anisokaryosis; }, {1, 2, 3}, opt.weights);
        report["karyomegaly"] = categorical_report(
            estimates, raters, [](const RaterEstimate& e) { return e.karyomegaly ? 1 : 0; }, {0, 1}, opt.weights);
    }

    if (opt.measurements) {
        manifest.add_input(*opt.measurements);
        const auto ms = load_measurements(*opt.measurements);
        const auto raters = ordered_unique(ms, &Measurement::rater_id);
        const auto cases = ordered_unique(ms, &Measurement::case_id);
        if (raters.size() < 2) {
            throw Error(ErrorKind::invalid_argument, opt.measurements->string() +
                                                         ": agreement needs at least 2 raters (found " +
                                                         std::to_string(raters.size()) + ")");
        }
        RaterMatrix m;
        m.cells.assign(cases.size(), std::vector<std::optional<double>>(raters.size()));
        for (const auto& x : ms) m.cells[index_of(cases, x.case_id)][index_of(raters, x.rater_id)] = x.value;
        const IccResult icc = icc_2_1(m);
        report["measurement"] = {{"raters", raters},
                                 {"icc_2_1", optional_json(icc.icc)},
                                 {"ci95_lo", optional_json(icc.ci95_lo)},
                                 {"ci95_hi", optional_json(icc.ci95_hi)},
                                 {"ms_rows", icc.ms_rows},
                                 {"ms_cols", icc.ms_cols},
                                 {"ms_error", icc.ms_error},
                                 {"n_cases", icc.n_cases},
                                 {"n_raters", icc.n_raters},
                                 {"dropped_cases", icc.dropped_rows}};
    }

    report["manifest"] = manifest.to_json();
    OutputSet outputs(opt.out, opt.force);
    outputs.add_json("agreement_report.json", report);
    outputs.commit();

    if (report.contains("anisokaryosis")) {
        out << "anisokaryosis Light's kappa " << report["anisokaryosis"]["lights_kappa"].dump() << "\n";
        out << "karyomegaly Light's kappa " << report["karyomegaly"]["lights_kappa"].dump() << "\n";
    }
    if (report.contains("measurement")) out << "ICC(2,1) " << report["measurement"]["icc_2_1"].dump() << "\n";
    return exit_ok;
}

}  // namespace nucmorph::cli
