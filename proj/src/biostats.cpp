#include "nucmorph/biostats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/fisher_f.hpp>

#include "nucmorph/error.hpp"
#include "nucmorph/morphometry.hpp"
#include "nucmorph/rng.hpp"

namespace nucmorph {

const char* to_string(SurvivalStatus status) noexcept {
    switch (status) {
        case SurvivalStatus::tumor_death: return "tumor_death";
        case SurvivalStatus::other_death: return "other_death";
        case SurvivalStatus::censored: return "censored";
    }
    return "censored";
}

bool endpoint_positive(const SurvivalRecord& r, Endpoint endpoint) {
    switch (endpoint) {
        case Endpoint::tumor_death_any_time:
            return r.status == SurvivalStatus::tumor_death;
        case Endpoint::tumor_death_12mo:
            return r.status == SurvivalStatus::tumor_death && r.time_months <= 12.0;
        case Endpoint::overall_death_12mo:
            return r.status != SurvivalStatus::censored && r.time_months <= 12.0;
    }
    return false;
}

EventDefinition endpoint_events(Endpoint endpoint) {
    if (endpoint == Endpoint::overall_death_12mo) return {true, true};
    return {true, false};
}

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw Error(ErrorKind::dimension_mismatch, std::string(what) + ": inputs differ in length (" +
                                                       std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

std::pair<std::size_t, std::size_t> class_counts(std::span<const int> labels) {
    const auto pos = static_cast<std::size_t>(
        std::count_if(labels.begin(), labels.end(), [](int l) { return l != 0; }));
    return {pos, labels.size() - pos};
}

// Mann-Whitney U via mid-ranks; exact for half-integer sums.
double auc_by_ranks(std::span<const double> scores, std::span<const int> labels, std::size_t n_pos,
                    std::size_t n_neg) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double mid_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]]) rank_sum_pos += mid_rank;
        }
        i = j + 1;
    }
    const double p = static_cast<double>(n_pos);
    const double u = rank_sum_pos - p * (p + 1.0) / 2.0;
    return u / (p * static_cast<double>(n_neg));
}

}  // namespace

RocResult roc_auc(std::span<const double> scores, std::span<const int> labels) {
    require_same_length(scores.size(), labels.size(), "roc_auc");
    const auto [n_pos, n_neg] = class_counts(labels);
    if (n_pos == 0 || n_neg == 0) {
        throw Error(ErrorKind::undefined_auc, "AUC needs at least one positive and one negative case");
    }
    RocResult out;
    out.n_positive = n_pos;
    out.n_negative = n_neg;
    out.auc = auc_by_ranks(scores, labels, n_pos, n_neg);

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    out.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    std::size_t tp = 0, fp = 0, i = 0;
    while (i < order.size()) {
        const double s = scores[order[i]];
        while (i < order.size() && scores[order[i]] == s) {
            if (labels[order[i]]) ++tp; else ++fp;
            ++i;
        }
        out.points.push_back({s, static_cast<double>(fp) / static_cast<double>(n_neg),
                              static_cast<double>(tp) / static_cast<double>(n_pos)});
    }
    return out;
}

BootstrapInterval bootstrap_auc_ci(std::span<const double> scores, std::span<const int> labels,
                                   std::size_t n_resamples, std::uint64_t seed) {
    require_same_length(scores.size(), labels.size(), "bootstrap_auc_ci");
    if (n_resamples == 0) throw Error(ErrorKind::invalid_argument, "bootstrap needs at least one resample");
    std::vector<double> pos, neg;
    for (std::size_t i = 0; i < scores.size(); ++i) (labels[i] ? pos : neg).push_back(scores[i]);
    if (pos.empty() || neg.empty()) {
        throw Error(ErrorKind::undefined_auc, "AUC needs at least one positive and one negative case");
    }

    BootstrapInterval out;
    out.n_resamples = n_resamples;
    std::vector<double> aucs;
    aucs.reserve(n_resamples);
    std::vector<double> s(pos.size() + neg.size());
    std::vector<int> resample_labels(s.size(), 0);
    std::fill_n(resample_labels.begin(), pos.size(), 1);
    for (std::size_t r = 0; r < n_resamples; ++r) {
        Rng rng(derive_seed(seed, r));
        // Stratified draws keep both classes in every resample.
        for (std::size_t i = 0; i < pos.size(); ++i) s[i] = pos[rng.below(pos.size())];
        for (std::size_t i = 0; i < neg.size(); ++i) s[pos.size() + i] = neg[rng.below(neg.size())];
        aucs.push_back(auc_by_ranks(s, resample_labels, pos.size(), neg.size()));
    }
    std::sort(aucs.begin(), aucs.end());
    out.lo = quantile_sorted(aucs, 0.025);
    out.hi = quantile_sorted(aucs, 0.975);
    return out;
}

ConfusionRates confusion_metrics(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
    if (tp + fn == 0) throw Error(ErrorKind::invalid_argument, "sensitivity needs at least one positive case");
    ConfusionRates r;
    r.sensitivity = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (tn + fp > 0) r.specificity = static_cast<double>(tn) / static_cast<double>(tn + fp);
    if (tp + fp > 0) r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (fn + tn > 0) r.false_omission_rate = static_cast<double>(fn) / static_cast<double>(fn + tn);
    return r;
}

ThresholdResult classify_at(std::span<const double> scores, std::span<const int> labels, double threshold) {
    require_same_length(scores.size(), labels.size(), "classify_at");
    ThresholdResult out;
    out.threshold = threshold;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool called = scores[i] >= threshold;
        if (labels[i]) (called ? out.tp : out.fn)++;
        else (called ? out.fp : out.tn)++;
    }
    out.rates = confusion_metrics(out.tp, out.fp, out.fn, out.tn);
    return out;
}

std::vector<double> threshold_grid(std::span<const double> scores) {
    if (scores.empty()) throw Error(ErrorKind::empty_sample, "threshold grid of an empty score list");
    const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double step = (hi - lo) / 200.0;
    std::vector<double> grid(201);
    for (int k = 0; k <= 200; ++k) grid[static_cast<std::size_t>(k)] = lo + static_cast<double>(k) * step;
    grid.back() = hi;
    return grid;
}

ThresholdResult threshold_at_sensitivity(std::span<const double> scores, std::span<const int> labels,
                                         double target_sensitivity) {
    require_same_length(scores.size(), labels.size(), "threshold_at_sensitivity");
    if (!(target_sensitivity > 0.0 && target_sensitivity <= 1.0)) {
        throw Error(ErrorKind::invalid_argument, "target sensitivity must lie in (0, 1]");
    }
    const auto [n_pos, n_neg] = class_counts(labels);
    if (n_pos == 0) throw Error(ErrorKind::invalid_argument, "threshold selection needs a positive case");

    const auto target_tp = static_cast<std::size_t>(
        std::ceil(target_sensitivity * static_cast<double>(n_pos) - 1e-9));
    const auto grid = threshold_grid(scores);

    std::optional<ThresholdResult> fallback;
    for (std::size_t k = grid.size(); k-- > 0;) {
        auto r = classify_at(scores, labels, grid[k]);
        if (r.tp == target_tp) return r;
        if (!fallback && r.tp >= target_tp) fallback = r;
    }
    if (!fallback) {
        throw Error(ErrorKind::invalid_argument, "no grid threshold reaches the target sensitivity");
    }
    return *fallback;
}

std::vector<KmStep> kaplan_meier(std::span<const SurvivalRecord> records, const EventDefinition& events) {
    if (records.empty()) throw Error(ErrorKind::empty_sample, "Kaplan-Meier needs at least one record");
    std::vector<std::pair<double, bool>> obs;
    obs.reserve(records.size());
    for (const auto& r : records) obs.emplace_back(r.time_months, events.is_event(r.status));
    std::sort(obs.begin(), obs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<KmStep> steps;
    std::size_t at_risk = obs.size();
    double survival = 1.0;
    std::size_t i = 0;
    while (i < obs.size()) {
        const double t = obs[i].first;
        std::size_t d = 0, c = 0;
        while (i < obs.size() && obs[i].first == t) {
            (obs[i].second ? d : c)++;
            ++i;
        }
        if (d > 0) survival *= static_cast<double>(at_risk - d) / static_cast<double>(at_risk);
        steps.push_back({t, at_risk, d, c, survival});
        at_risk -= d + c;
    }
    return steps;
}

namespace {

struct EventTime {
    double time;
    std::size_t first_at_risk;  // index into the time-sorted arrays
    std::size_t n_events;
    double sum_x_events;
    double min_x_events;
    double max_x_events;
};

struct CoxData {
    std::vector<double> x;  // centred covariate, sorted by time ascending
    std::vector<EventTime> event_times;
    std::size_t n_events = 0;
};

CoxData prepare_cox(std::span<const SurvivalRecord> records, std::span<const double> covariate,
                    const EventDefinition& events) {
    require_same_length(records.size(), covariate.size(), "cox_univariate");
    if (records.empty()) throw Error(ErrorKind::empty_sample, "Cox regression needs records");
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return records[a].time_months < records[b].time_months; });

    const double centre = std::accumulate(covariate.begin(), covariate.end(), 0.0) /
                          static_cast<double>(covariate.size());
    CoxData data;
    data.x.reserve(order.size());
    for (std::size_t idx : order) data.x.push_back(covariate[idx] - centre);

    std::size_t i = 0;
    while (i < order.size()) {
        const double t = records[order[i]].time_months;
        EventTime et{t, i, 0, 0.0, std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity()};
        std::size_t j = i;
        while (j < order.size() && records[order[j]].time_months == t) {
            if (events.is_event(records[order[j]].status)) {
                ++et.n_events;
                et.sum_x_events += data.x[j];
                et.min_x_events = std::min(et.min_x_events, data.x[j]);
                et.max_x_events = std::max(et.max_x_events, data.x[j]);
            }
            ++j;
        }
        if (et.n_events > 0) {
            data.event_times.push_back(et);
            data.n_events += et.n_events;
        }
        i = j;
    }
    return data;
}

struct CoxEval {
    double loglik = 0.0;
    double score = 0.0;
    double information = 0.0;
};

CoxEval evaluate(const CoxData& d, double beta) {
    // Risk-set sums accumulated from the latest time backwards.
    CoxEval e;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    std::size_t next = d.x.size();
    for (auto it = d.event_times.rbegin(); it != d.event_times.rend(); ++it) {
        while (next > it->first_at_risk) {
            --next;
            const double w = std::exp(beta * d.x[next]);
            s0 += w;
            s1 += w * d.x[next];
            s2 += w * d.x[next] * d.x[next];
        }
        const double dn = static_cast<double>(it->n_events);
        const double mean = s1 / s0;
        e.loglik += beta * it->sum_x_events - dn * std::log(s0);
        e.score += it->sum_x_events - dn * mean;
        e.information += dn * (s2 / s0 - mean * mean);
    }
    return e;
}

// +1 / -1 when every event carries the maximum / minimum covariate of its risk
// set (the partial likelihood is then monotone); 0 otherwise.
int monotone_direction(const CoxData& d, bool& constant) {
    std::vector<double> suffix_min(d.x.size()), suffix_max(d.x.size());
    for (std::size_t i = d.x.size(); i-- > 0;) {
        const bool last = i + 1 == d.x.size();
        suffix_min[i] = last ? d.x[i] : std::min(d.x[i], suffix_min[i + 1]);
        suffix_max[i] = last ? d.x[i] : std::max(d.x[i], suffix_max[i + 1]);
    }
    bool all_max = true, all_min = true;
    constant = true;
    for (const auto& et : d.event_times) {
        const double lo = suffix_min[et.first_at_risk];
        const double hi = suffix_max[et.first_at_risk];
        if (lo != hi) constant = false;
        if (et.min_x_events != hi) all_max = false;
        if (et.max_x_events != lo) all_min = false;
    }
    if (constant) return 0;
    if (all_max) return 1;
    if (all_min) return -1;
    return 0;
}

}  // namespace

double cox_log_partial_likelihood(std::span<const SurvivalRecord> records, std::span<const double> covariate,
                                  const EventDefinition& events, double beta) {
    return evaluate(prepare_cox(records, covariate, events), beta).loglik;
}

CoxFit cox_univariate(std::span<const SurvivalRecord> records, std::span<const double> covariate,
                      const EventDefinition& events) {
    const CoxData data = prepare_cox(records, covariate, events);
    CoxFit fit;
    fit.n_events = data.n_events;
    if (data.n_events == 0) throw Error(ErrorKind::no_events, "Cox regression needs at least one event");

    bool constant = false;
    const int direction = monotone_direction(data, constant);
    if (constant) {
        throw Error(ErrorKind::invalid_argument, "covariate is constant within every event risk set");
    }
    if (direction != 0) {
        fit.diverged = true;
        fit.divergence_direction = direction;
        return fit;
    }

    double beta = 0.0;
    CoxEval e = evaluate(data, beta);
    constexpr int max_iterations = 50;
    while (fit.iterations < max_iterations && std::abs(e.score) >= 1e-8) {
        ++fit.iterations;
        double step = e.score / e.information;
        double candidate = beta + step;
        CoxEval next = evaluate(data, candidate);
        // Step halving keeps the likelihood non-decreasing.
        for (int h = 0; h < 30 && !(next.loglik >= e.loglik); ++h) {
            step *= 0.5;
            candidate = beta + step;
            next = evaluate(data, candidate);
        }
        beta = candidate;
        e = next;
    }
    fit.converged = std::abs(e.score) < 1e-8;
    fit.coefficient = beta;
    fit.hazard_ratio = std::exp(beta);
    if (e.information > 0.0) {
        const double se = 1.0 / std::sqrt(e.information);
        fit.se = se;
        fit.ci95_lo = std::exp(beta - 1.96 * se);
        fit.ci95_hi = std::exp(beta + 1.96 * se);
        fit.p_value = std::erfc(std::abs(beta / se) / std::sqrt(2.0));
    }
    return fit;
}

std::optional<double> cohen_kappa_weighted(std::span<const int> rater1, std::span<const int> rater2,
                                           std::span<const int> categories, KappaWeights weights) {
    require_same_length(rater1.size(), rater2.size(), "cohen_kappa_weighted");
    if (rater1.size() < 2) throw Error(ErrorKind::invalid_argument, "kappa needs at least two rated cases");
    const std::size_t m = categories.size();
    if (m < 2) throw Error(ErrorKind::invalid_argument, "kappa needs at least two categories");

    auto index_of = [&](int rating) {
        const auto it = std::find(categories.begin(), categories.end(), rating);
        if (it == categories.end()) {
            throw Error(ErrorKind::invalid_argument, "rating " + std::to_string(rating) + " is not a declared category");
        }
        return static_cast<std::size_t>(it - categories.begin());
    };

    std::vector<double> observed(m * m, 0.0), row(m, 0.0), col(m, 0.0);
    const double n = static_cast<double>(rater1.size());
    for (std::size_t k = 0; k < rater1.size(); ++k) {
        const std::size_t i = index_of(rater1[k]);
        const std::size_t j = index_of(rater2[k]);
        observed[i * m + j] += 1.0 / n;
        row[i] += 1.0 / n;
        col[j] += 1.0 / n;
    }
    double w_obs = 0.0, w_exp = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double dist = std::abs(static_cast<double>(i) - static_cast<double>(j)) / static_cast<double>(m - 1);
            const double w = weights == KappaWeights::linear ? dist : dist * dist;
            w_obs += w * observed[i * m + j];
            w_exp += w * row[i] * col[j];
        }
    }
    if (w_exp <= 0.0) return std::nullopt;
    return 1.0 - w_obs / w_exp;
}

std::vector<std::vector<double>> RaterMatrix::complete_rows(std::size_t* dropped) const {
    std::vector<std::vector<double>> out;
    std::size_t gaps = 0;
    for (const auto& r : cells) {
        if (std::any_of(r.begin(), r.end(), [](const auto& c) { return !c.has_value(); })) {
            ++gaps;
            continue;
        }
        std::vector<double> values;
        values.reserve(r.size());
        for (const auto& c : r) values.push_back(*c);
        out.push_back(std::move(values));
    }
    if (dropped) *dropped = gaps;
    return out;
}

namespace {

void require_rectangular(const RaterMatrix& m) {
    for (const auto& r : m.cells) {
        if (r.size() != m.n_raters()) throw Error(ErrorKind::invalid_argument, "rater matrix is not rectangular");
    }
}

}  // namespace

LightsKappa lights_kappa(const RaterMatrix& matrix, std::span<const int> categories, KappaWeights weights) {
    require_rectangular(matrix);
    const std::size_t k = matrix.n_raters();
    if (k < 2) throw Error(ErrorKind::invalid_argument, "Light's kappa needs at least two raters");

    LightsKappa out;
    const auto rows = matrix.complete_rows(&out.dropped_rows);
    std::vector<std::vector<int>> by_rater(k);
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < k; ++j) {
            const double v = r[j];
            if (v != std::round(v)) {
                throw Error(ErrorKind::invalid_argument, "categorical ratings must be integers");
            }
            by_rater[j].push_back(static_cast<int>(v));
        }
    }
    out.pairwise.assign(k, std::vector<std::optional<double>>(k));
    double sum = 0.0;
    std::size_t defined = 0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            const auto kappa = cohen_kappa_weighted(by_rater[a], by_rater[b], categories, weights);
            out.pairwise[a][b] = kappa;
            out.pairwise[b][a] = kappa;
            if (kappa) {
                sum += *kappa;
                ++defined;
            } else {
                ++out.excluded_pairs;
            }
        }
    }
    if (defined > 0) out.kappa = sum / static_cast<double>(defined);
    return out;
}

IccResult icc_2_1(const RaterMatrix& matrix) {
    require_rectangular(matrix);
    IccResult out;
    const auto rows = matrix.complete_rows(&out.dropped_rows);
    const std::size_t n = rows.size();
    const std::size_t k = matrix.n_raters();
    if (n < 2 || k < 2) {
        throw Error(ErrorKind::invalid_argument, "ICC needs at least two complete cases and two raters");
    }
    out.n_cases = n;
    out.n_raters = k;
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);

    double grand = 0.0;
    std::vector<double> row_mean(n, 0.0), col_mean(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            row_mean[i] += rows[i][j] / kd;
            col_mean[j] += rows[i][j] / nd;
            grand += rows[i][j];
        }
    }
    grand /= nd * kd;
    double ss_rows = 0.0, ss_cols = 0.0, ss_total = 0.0;
    for (double m : row_mean) ss_rows += kd * (m - grand) * (m - grand);
    for (double m : col_mean) ss_cols += nd * (m - grand) * (m - grand);
    for (const auto& r : rows) {
        for (double v : r) ss_total += (v - grand) * (v - grand);
    }
    const double ss_error = std::max(0.0, ss_total - ss_rows - ss_cols);
    const double msr = ss_rows / (nd - 1.0);
    const double msc = ss_cols / (kd - 1.0);
    const double mse = ss_error / ((nd - 1.0) * (kd - 1.0));
    out.ms_rows = msr;
    out.ms_cols = msc;
    out.ms_error = mse;

    const double denom = msr + (kd - 1.0) * mse + kd * (msc - mse) / nd;
    if (ss_rows <= 0.0 || denom <= 0.0) return out;
    const double icc = (msr - mse) / denom;
    out.icc = icc;

    if (!(mse > 0.0) || icc >= 1.0) return out;
    const double a = kd * icc / (nd * (1.0 - icc));
    const double b = 1.0 + kd * icc * (nd - 1.0) / (nd * (1.0 - icc));
    const double v = (a * msc + b * mse) * (a * msc + b * mse) /
                     ((a * msc) * (a * msc) / (kd - 1.0) + (b * mse) * (b * mse) / ((nd - 1.0) * (kd - 1.0)));
    if (!(v > 0.0) || !std::isfinite(v)) return out;
    const boost::math::fisher_f_distribution<double> f_lower(nd - 1.0, v);
    const boost::math::fisher_f_distribution<double> f_upper(v, nd - 1.0);
    const double fl = boost::math::quantile(f_lower, 0.975);
    const double fu = boost::math::quantile(f_upper, 0.975);
    const double c = kd * msc + (kd * nd - kd - nd) * mse;
    out.ci95_lo = nd * (msr - fl * mse) / (fl * c + nd * msr);
    out.ci95_hi = nd * (fu * msr - mse) / (c + nd * fu * msr);
    return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    require_same_length(x.size(), y.size(), "pearson");
    if (x.size() < 3) throw Error(ErrorKind::invalid_argument, "Pearson correlation needs at least 3 pairs");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

LinearFit linear_regression(std::span<const double> x, std::span<const double> y) {
    require_same_length(x.size(), y.size(), "linear_regression");
    if (x.size() < 2) throw Error(ErrorKind::invalid_argument, "regression needs at least 2 points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw Error(ErrorKind::invalid_argument, "regression needs at least 2 distinct x values");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy > 0.0) fit.r_squared = (sxy * sxy) / (sxx * syy);
    return fit;
}

}  // namespace nucmorph
