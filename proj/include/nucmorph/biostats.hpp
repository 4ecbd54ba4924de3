#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nucmorph {

// ---------------------------------------------------------------------------
// Outcome data
// ---------------------------------------------------------------------------

enum class SurvivalStatus { tumor_death, other_death, censored };

const char* to_string(SurvivalStatus status) noexcept;

struct SurvivalRecord {
    std::string case_id;
    double time_months = 0.0;
    SurvivalStatus status = SurvivalStatus::censored;
};

/// Which statuses count as an event; everything else is censored at its time.
struct EventDefinition {
    bool tumor_death = true;
    bool other_death = false;

    bool is_event(SurvivalStatus s) const noexcept {
        return (s == SurvivalStatus::tumor_death && tumor_death) ||
               (s == SurvivalStatus::other_death && other_death);
    }
};

enum class Endpoint { tumor_death_any_time, tumor_death_12mo, overall_death_12mo };

/// Positive-class label for ROC / threshold work under an endpoint.
bool endpoint_positive(const SurvivalRecord& record, Endpoint endpoint);

/// Event definition used for Kaplan-Meier and Cox under an endpoint.
EventDefinition endpoint_events(Endpoint endpoint);

// ---------------------------------------------------------------------------
// Discrimination
// ---------------------------------------------------------------------------

struct RocPoint {
    double threshold;  // score >= threshold is positive; +inf for the origin
    double fpr;
    double tpr;
};

struct RocResult {
    double auc = 0.0;
    std::vector<RocPoint> points;  // from (0, 0) to (1, 1)
    std::size_t n_positive = 0;
    std::size_t n_negative = 0;
};

/// Mann-Whitney AUC (ties count one half) plus the full ROC point list.
/// Labels: non-zero = positive.
/// Throws ErrorKind::undefined_auc unless both classes are present.
RocResult roc_auc(std::span<const double> scores, std::span<const int> labels);

struct BootstrapInterval {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n_resamples = 0;
    std::size_t n_redrawn = 0;  // single-class resamples that were discarded
};

/// Percentile interval of AUCs over case resamples drawn with replacement
/// within each class. Resample i uses derive_seed(seed, i), so the result does
/// not depend on evaluation order.
BootstrapInterval bootstrap_auc_ci(std::span<const double> scores, std::span<const int> labels,
                                   std::size_t n_resamples, std::uint64_t seed);

struct ConfusionRates {
    double sensitivity = 0.0;
    std::optional<double> specificity;          // tn + fp = 0 -> undefined
    std::optional<double> precision;            // tp + fp = 0 -> undefined
    std::optional<double> false_omission_rate;  // fn + tn = 0 -> undefined
};

ConfusionRates confusion_metrics(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn);

struct ThresholdResult {
    double threshold = 0.0;
    std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
    ConfusionRates rates;
};

/// Confusion counts of the rule score >= threshold.
ThresholdResult classify_at(std::span<const double> scores, std::span<const int> labels, double threshold);

/// The 201 candidate cut-offs min + k * (max - min) / 200, k = 0..200.
std::vector<double> threshold_grid(std::span<const double> scores);

/// Highest grid cut-off whose true-positive count equals the target count
/// ceil(target * positives); if none hits it exactly, the highest cut-off
/// reaching at least the target sensitivity.
ThresholdResult threshold_at_sensitivity(std::span<const double> scores, std::span<const int> labels,
                                         double target_sensitivity);

// ---------------------------------------------------------------------------
// Survival
// ---------------------------------------------------------------------------

struct KmStep {
    double time;
    std::size_t n_at_risk;
    std::size_t n_events;
    std::size_t n_censored;
    double survival;  // S(t) just after this time
};

/// Product-limit estimator; one row per distinct observed time. Censorings at
/// a time leave the risk set after that time's events.
std::vector<KmStep> kaplan_meier(std::span<const SurvivalRecord> records, const EventDefinition& events);

struct CoxFit {
    bool converged = false;
    bool diverged = false;        // monotone likelihood; no finite estimate exists
    int divergence_direction = 0;  // +1: beta -> +inf, -1: beta -> -inf
    std::optional<double> coefficient;
    std::optional<double> hazard_ratio;
    std::optional<double> se;
    std::optional<double> ci95_lo;
    std::optional<double> ci95_hi;
    std::optional<double> p_value;
    int iterations = 0;
    std::size_t n_events = 0;
};

/// Breslow log partial likelihood of a single covariate at `beta`.
double cox_log_partial_likelihood(std::span<const SurvivalRecord> records, std::span<const double> covariate,
                                  const EventDefinition& events, double beta);

/// Newton-Raphson from beta = 0 until |score| < 1e-8 or 50 iterations.
CoxFit cox_univariate(std::span<const SurvivalRecord> records, std::span<const double> covariate,
                      const EventDefinition& events);

// ---------------------------------------------------------------------------
// Agreement
// ---------------------------------------------------------------------------

enum class KappaWeights { linear, quadratic };

/// Weighted Cohen's kappa over an ordered category alphabet; ratings must be
/// members of `categories`. Empty when chance-expected disagreement is zero.
std::optional<double> cohen_kappa_weighted(std::span<const int> rater1, std::span<const int> rater2,
                                           std::span<const int> categories,
                                           KappaWeights weights = KappaWeights::linear);

/// cases x raters; an empty cell marks a missing rating.
struct RaterMatrix {
    std::vector<std::vector<std::optional<double>>> cells;
    std::size_t n_raters() const { return cells.empty() ? 0 : cells.front().size(); }

    /// Rows with any missing cell removed.
    std::vector<std::vector<double>> complete_rows(std::size_t* dropped = nullptr) const;
};

struct LightsKappa {
    std::optional<double> kappa;
    std::vector<std::vector<std::optional<double>>> pairwise;  // raters x raters, diagonal empty
    std::size_t excluded_pairs = 0;
    std::size_t dropped_rows = 0;
};

LightsKappa lights_kappa(const RaterMatrix& matrix, std::span<const int> categories,
                         KappaWeights weights = KappaWeights::linear);

struct IccResult {
    std::optional<double> icc;
    std::optional<double> ci95_lo;
    std::optional<double> ci95_hi;
    double ms_rows = 0.0;
    double ms_cols = 0.0;
    double ms_error = 0.0;
    std::size_t n_cases = 0;
    std::size_t n_raters = 0;
    std::size_t dropped_rows = 0;
};

/// ICC(2,1): two-way random effects, absolute agreement, single measures,
/// with the F-distribution confidence interval.
IccResult icc_2_1(const RaterMatrix& matrix);

// ---------------------------------------------------------------------------
// Association
// ---------------------------------------------------------------------------

std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::optional<double> r_squared;  // undefined for constant y
};

LinearFit linear_regression(std::span<const double> x, std::span<const double> y);

}  // namespace nucmorph
