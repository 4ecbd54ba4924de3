#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nucmorph/biostats.hpp"
#include "nucmorph/error.hpp"
#include "oracles.hpp"

using namespace nucmorph;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::io;
}

std::vector<SurvivalRecord> records(const std::vector<double>& times, const std::vector<SurvivalStatus>& status) {
    std::vector<SurvivalRecord> out;
    for (std::size_t i = 0; i < times.size(); ++i) out.push_back({"c" + std::to_string(i), times[i], status[i]});
    return out;
}

constexpr auto E = SurvivalStatus::tumor_death;
constexpr auto O = SurvivalStatus::other_death;
constexpr auto C = SurvivalStatus::censored;

RaterMatrix to_matrix(const std::vector<std::vector<int>>& rows) {
    RaterMatrix m;
    for (const auto& r : rows) {
        std::vector<std::optional<double>> cells;
        for (int v : r) cells.push_back(double(v));
        m.cells.push_back(cells);
    }
    return m;
}

}  // namespace

TEST_CASE("endpoints") {
    const SurvivalRecord early{"a", 6.0, E}, late{"b", 20.0, E}, other{"c", 3.0, O}, cens{"d", 2.0, C};
    CHECK(endpoint_positive(early, Endpoint::tumor_death_any_time));
    CHECK(endpoint_positive(late, Endpoint::tumor_death_any_time));
    CHECK_FALSE(endpoint_positive(other, Endpoint::tumor_death_any_time));
    CHECK_FALSE(endpoint_positive(late, Endpoint::tumor_death_12mo));
    CHECK(endpoint_positive(early, Endpoint::tumor_death_12mo));
    CHECK(endpoint_positive(other, Endpoint::overall_death_12mo));
    CHECK_FALSE(endpoint_positive(cens, Endpoint::overall_death_12mo));
    CHECK(endpoint_events(Endpoint::overall_death_12mo).other_death);
    CHECK_FALSE(endpoint_events(Endpoint::tumor_death_12mo).other_death);
}

TEST_CASE("roc_auc") {
    const std::vector<double> sep{1, 2, 3, 4};
    const std::vector<int> y{0, 0, 1, 1};
    CHECK(roc_auc(sep, y).auc == 1.0);
    const std::vector<double> flat(4, 2.0);
    CHECK(roc_auc(flat, y).auc == 0.5);
    const std::vector<double> s3{3, 1, 2};
    const std::vector<int> y3{1, 1, 0};
    CHECK(roc_auc(s3, y3).auc == 0.5);
    const std::vector<int> one_class{1, 1, 1, 1};
    CHECK(kind_of([&] { roc_auc(sep, one_class); }) == ErrorKind::undefined_auc);

    const RocResult r = roc_auc(sep, y);
    CHECK(r.n_positive == 2);
    CHECK(r.n_negative == 2);
    CHECK(r.points.front().fpr == 0.0);
    CHECK(r.points.front().tpr == 0.0);
    CHECK(r.points.back().fpr == 1.0);
    CHECK(r.points.back().tpr == 1.0);
}

TEST_CASE("roc_auc matches pair counting, trapezoids and transforms") {
    std::mt19937 gen(13);
    std::uniform_int_distribution<int> v(0, 6);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial) % 12;
        std::vector<double> s(n);
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = v(gen);
            y[i] = static_cast<int>(gen() % 2);
        }
        y[0] = 1;
        y[1] = 0;
        const RocResult r = roc_auc(s, y);
        CHECK(r.auc == oracle::auc_pairs(s, y));

        double trap = 0.0;
        for (std::size_t i = 1; i < r.points.size(); ++i) {
            trap += (r.points[i].fpr - r.points[i - 1].fpr) * (r.points[i].tpr + r.points[i - 1].tpr) / 2.0;
        }
        CHECK(std::abs(trap - r.auc) < 1e-12);

        std::vector<double> neg(n), expd(n);
        for (std::size_t i = 0; i < n; ++i) {
            neg[i] = -s[i];
            expd[i] = std::exp(0.3 * s[i]) + 7.0;
        }
        CHECK(std::abs(roc_auc(neg, y).auc + r.auc - 1.0) < 1e-12);
        CHECK(roc_auc(expd, y).auc == r.auc);
    }
}

TEST_CASE("bootstrap_auc_ci") {
    std::vector<double> s;
    std::vector<int> y;
    for (int i = 0; i < 20; ++i) {
        s.push_back(i);
        y.push_back(i >= 10);
    }
    const auto sep = bootstrap_auc_ci(s, y, 500, 7);
    CHECK(sep.lo == 1.0);
    CHECK(sep.hi == 1.0);

    std::mt19937 gen(1);
    std::normal_distribution<double> nd;
    std::vector<double> rs;
    std::vector<int> ry;
    for (int i = 0; i < 60; ++i) {
        ry.push_back(i % 3 == 0);
        rs.push_back(nd(gen) + (ry.back() ? 0.8 : 0.0));
    }
    const auto a = bootstrap_auc_ci(rs, ry, 1000, 99);
    const auto b = bootstrap_auc_ci(rs, ry, 1000, 99);
    CHECK(a.lo == b.lo);
    CHECK(a.hi == b.hi);
    CHECK(a.n_resamples == 1000);
    const double point = roc_auc(rs, ry).auc;
    CHECK(a.lo <= point);
    CHECK(point <= a.hi);
    CHECK(a.lo < a.hi);
    CHECK(kind_of([&] { bootstrap_auc_ci(rs, ry, 0, 1); }) == ErrorKind::invalid_argument);
}

TEST_CASE("confusion_metrics") {
    const ConfusionRates r = confusion_metrics(10, 6, 3, 77);
    CHECK(r.sensitivity == doctest::Approx(10.0 / 13.0));
    CHECK(std::round(r.sensitivity * 1000.0) == 769.0);
    CHECK(std::round(*r.specificity * 1000.0) == 928.0);
    CHECK(*r.precision == 0.625);
    CHECK(*r.false_omission_rate == doctest::Approx(3.0 / 80.0));

    const ConfusionRates perfect = confusion_metrics(5, 0, 0, 5);
    CHECK(perfect.sensitivity == 1.0);
    CHECK(*perfect.specificity == 1.0);
    CHECK(*perfect.precision == 1.0);

    CHECK_FALSE(confusion_metrics(0, 0, 4, 3).precision);
    CHECK_FALSE(confusion_metrics(4, 0, 0, 0).specificity);
    CHECK_FALSE(confusion_metrics(4, 2, 0, 0).false_omission_rate);
    CHECK(kind_of([] { confusion_metrics(0, 1, 0, 1); }) == ErrorKind::invalid_argument);
}

TEST_CASE("threshold grid and selection") {
    const std::vector<double> s{10, 9, 8, 1, 2, 3};
    const std::vector<int> y{1, 1, 1, 0, 0, 0};
    const auto grid = threshold_grid(s);
    REQUIRE(grid.size() == 201);
    CHECK(grid.front() == 1.0);
    CHECK(grid.back() == 10.0);

    SUBCASE("two of three positives") {
        const ThresholdResult t = threshold_at_sensitivity(s, y, 2.0 / 3.0);
        CHECK(t.tp == 2);
        CHECK(t.fn == 1);
        CHECK(t.fp == 0);
        // Highest grid candidate that still keeps exactly two positives.
        CHECK(t.threshold == doctest::Approx(1.0 + 177.0 * 9.0 / 200.0));
        for (double c : grid) {
            if (c > t.threshold) CHECK(classify_at(s, y, c).tp < 2);
        }
    }
    SUBCASE("full sensitivity") {
        const ThresholdResult t = threshold_at_sensitivity(s, y, 1.0);
        CHECK(t.tp == 3);
        CHECK(t.threshold == doctest::Approx(8.0).epsilon(0.01));
        CHECK(t.threshold <= 8.0);
    }
    SUBCASE("thirteen positives at 0.769") {
        std::vector<double> sc;
        std::vector<int> lab;
        for (int i = 0; i < 13; ++i) {
            sc.push_back(5.0 + i);
            lab.push_back(1);
        }
        for (int i = 0; i < 40; ++i) {
            sc.push_back(0.25 * i);
            lab.push_back(0);
        }
        const ThresholdResult t = threshold_at_sensitivity(sc, lab, 0.769);
        CHECK(t.tp == 10);
        CHECK(t.fn == 3);
    }
    SUBCASE("rule is score >= threshold") {
        const ThresholdResult t = classify_at(s, y, 9.0);
        CHECK(t.tp == 2);
        CHECK(t.fp == 0);
        CHECK(t.tn == 3);
    }
    CHECK(kind_of([&] { threshold_at_sensitivity(s, y, 0.0); }) == ErrorKind::invalid_argument);
}

TEST_CASE("threshold_at_sensitivity on random inputs") {
    std::mt19937 gen(31);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(trial) % 20;
        std::vector<double> s(n);
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = std::round(u(gen) * 4.0) / 4.0;
            y[i] = static_cast<int>(gen() % 2);
        }
        y[0] = 1;
        const double target = 0.1 + 0.9 * double(trial % 10) / 9.0;
        const ThresholdResult t = threshold_at_sensitivity(s, y, target);
        CHECK(t.rates.sensitivity >= target - 1e-9);
        const std::size_t pos = t.tp + t.fn;
        const auto need = static_cast<std::size_t>(std::ceil(target * double(pos) - 1e-9));
        bool exact_exists = false;
        for (double c : threshold_grid(s)) exact_exists |= classify_at(s, y, c).tp == need;
        for (double c : threshold_grid(s)) {
            if (c <= t.threshold) continue;
            const auto r = classify_at(s, y, c);
            if (exact_exists) {
                CHECK(r.tp != need);
            } else {
                CHECK(r.rates.sensitivity < target - 1e-9);
            }
        }
    }
}

TEST_CASE("kaplan_meier") {
    const EventDefinition ev;
    SUBCASE("hand example") {
        const auto r = records({2, 4, 6}, {E, C, E});
        const auto km = kaplan_meier(r, ev);
        REQUIRE(km.size() == 3);
        CHECK(km[0].survival == 2.0 / 3.0);
        CHECK(km[1].survival == 2.0 / 3.0);
        CHECK(km[1].n_censored == 1);
        CHECK(km[2].n_at_risk == 1);
        CHECK(km[2].survival == 0.0);
    }
    SUBCASE("all censored") {
        for (const auto& s : kaplan_meier(records({1, 2, 3}, {C, C, O}), ev)) CHECK(s.survival == 1.0);
    }
    SUBCASE("other deaths count under overall mortality") {
        const auto km = kaplan_meier(records({1, 2}, {O, E}), EventDefinition{true, true});
        CHECK(km[0].survival == 0.5);
    }
    SUBCASE("events before censorings at a tie") {
        const auto km = kaplan_meier(records({3, 3, 5}, {E, C, E}), ev);
        CHECK(km[0].n_at_risk == 3);
        CHECK(km[0].survival == doctest::Approx(2.0 / 3.0));
        CHECK(km[1].n_at_risk == 1);
        CHECK(km[1].survival == 0.0);
    }
    SUBCASE("matches a direct product-limit oracle") {
        std::mt19937 gen(2);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> t;
            std::vector<SurvivalStatus> st;
            for (int i = 0; i < 12; ++i) {
                t.push_back(1 + gen() % 8);
                st.push_back(gen() % 3 == 0 ? C : (gen() % 2 ? E : O));
            }
            const auto r = records(t, st);
            double last = 1.0;
            for (const auto& step : kaplan_meier(r, ev)) {
                CHECK(step.survival == doctest::Approx(oracle::km_at(r, ev, step.time)).epsilon(1e-12));
                CHECK(step.survival <= last);
                CHECK(step.survival >= 0.0);
                last = step.survival;
            }
        }
    }
    CHECK(kind_of([&] { kaplan_meier(std::vector<SurvivalRecord>{}, ev); }) == ErrorKind::empty_sample);
}

TEST_CASE("cox_univariate") {
    const EventDefinition ev;
    SUBCASE("symmetric groups give HR 1") {
        const auto r = records({1, 2, 3, 4, 5, 6, 7, 8}, {E, E, C, E, E, E, C, E});
        const std::vector<double> g{1, 0, 1, 0, 0, 1, 0, 1};
        const std::vector<double> swapped{0, 1, 0, 1, 1, 0, 1, 0};
        const CoxFit a = cox_univariate(r, g, ev);
        const CoxFit b = cox_univariate(r, swapped, ev);
        REQUIRE(a.coefficient);
        REQUIRE(b.coefficient);
        CHECK(*a.coefficient == doctest::Approx(-*b.coefficient).epsilon(1e-9));
        const auto sym = records({1, 1, 2, 2}, {E, E, E, E});
        const std::vector<double> sg{1, 0, 1, 0};
        const CoxFit s = cox_univariate(sym, sg, ev);
        CHECK(std::abs(*s.hazard_ratio - 1.0) < 1e-6);
    }
    SUBCASE("grid search agrees") {
        const auto r = records({1, 2, 3, 4, 5}, {E, E, E, C, E});
        const std::vector<double> g{1, 0, 1, 0, 0};
        const CoxFit f = cox_univariate(r, g, ev);
        REQUIRE(f.converged);
        const double grid = oracle::cox_grid_argmax(r, g, ev, -5.0, 5.0, 1e-4);
        CHECK(std::abs(*f.coefficient - grid) < 2e-4);
        const double h = 1e-5;
        const double grad = (cox_log_partial_likelihood(r, g, ev, *f.coefficient + h) -
                             cox_log_partial_likelihood(r, g, ev, *f.coefficient - h)) /
                            (2.0 * h);
        CHECK(std::abs(grad) < 1e-6);
        CHECK(*f.hazard_ratio == doctest::Approx(std::exp(*f.coefficient)));
        CHECK(*f.ci95_lo == doctest::Approx(std::exp(*f.coefficient - 1.96 * *f.se)));
        CHECK(*f.ci95_hi == doctest::Approx(std::exp(*f.coefficient + 1.96 * *f.se)));
        CHECK(*f.p_value > 0.0);
        CHECK(*f.p_value < 1.0);
    }
    SUBCASE("early events in one group diverge") {
        const auto r = records({1, 2, 3, 4}, {E, E, E, E});
        const std::vector<double> g{1, 1, 0, 0};
        const CoxFit f = cox_univariate(r, g, ev);
        CHECK(f.diverged);
        CHECK(f.divergence_direction == 1);
        CHECK_FALSE(f.hazard_ratio);
        CHECK_FALSE(f.coefficient);
    }
    SUBCASE("all events in one group diverge") {
        const auto r = records({1, 2, 3, 4, 5, 6}, {E, C, E, C, C, C});
        const std::vector<double> g{0, 1, 0, 1, 1, 1};
        const CoxFit f = cox_univariate(r, g, ev);
        CHECK(f.diverged);
        CHECK(f.divergence_direction == -1);
        CHECK_FALSE(f.hazard_ratio);
    }
    SUBCASE("log-likelihood matches a direct oracle") {
        const auto r = records({2, 2, 3, 5, 7, 7}, {E, E, C, E, E, C});
        const std::vector<double> x{0.5, 1.5, -1.0, 2.0, 0.0, 1.0};
        for (double b : {-1.0, -0.2, 0.0, 0.7, 2.0}) {
            CHECK(cox_log_partial_likelihood(r, x, ev, b) ==
                  doctest::Approx(oracle::cox_loglik(r, x, ev, b)).epsilon(1e-12));
        }
    }
    SUBCASE("time scaling leaves beta unchanged") {
        const auto r = records({1, 2, 3, 4, 5, 6}, {E, E, C, E, E, E});
        const std::vector<double> x{0.5, 1.5, -1.0, 2.0, 0.0, 1.0};
        auto scaled = r;
        for (auto& s : scaled) s.time_months *= 3.7;
        CHECK(*cox_univariate(r, x, ev).coefficient ==
              doctest::Approx(*cox_univariate(scaled, x, ev).coefficient).epsilon(1e-12));
    }
    SUBCASE("errors") {
        const auto none = records({1, 2}, {C, O});
        const std::vector<double> g{0, 1};
        CHECK(kind_of([&] { cox_univariate(none, g, ev); }) == ErrorKind::no_events);
    }
}

TEST_CASE("cohen_kappa_weighted") {
    const std::vector<int> cats{1, 2, 3};
    const std::vector<int> a{1, 2, 3, 2, 1, 3};
    CHECK(*cohen_kappa_weighted(a, a, cats) == 1.0);
    const std::vector<int> r1{1, 1, 2, 2}, r2{1, 2, 1, 2};
    const std::vector<int> two{1, 2};
    CHECK(*cohen_kappa_weighted(r1, r2, two) == doctest::Approx(0.0).epsilon(1e-15));
    const std::vector<int> constant{2, 2, 2};
    CHECK_FALSE(cohen_kappa_weighted(constant, constant, cats));
    const std::vector<int> bad{1, 4};
    CHECK(kind_of([&] { cohen_kappa_weighted(bad, bad, cats); }) == ErrorKind::invalid_argument);

    std::mt19937 gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> x(20), y(20);
        for (std::size_t i = 0; i < 20; ++i) {
            x[i] = 1 + static_cast<int>(gen() % 3);
            y[i] = gen() % 2 ? x[i] : 1 + static_cast<int>(gen() % 3);
        }
        const bool quad = trial % 2;
        const auto w = quad ? KappaWeights::quadratic : KappaWeights::linear;
        const auto k = cohen_kappa_weighted(x, y, cats, w);
        const auto o = oracle::kappa(x, y, cats, quad);
        REQUIRE(k.has_value() == o.has_value());
        if (k) CHECK(std::abs(*k - *o) < 1e-9);

        std::vector<int> rx(20), ry(20);
        for (std::size_t i = 0; i < 20; ++i) {
            rx[i] = 4 - x[i];
            ry[i] = 4 - y[i];
        }
        if (k) CHECK(std::abs(*cohen_kappa_weighted(rx, ry, cats, w) - *k) < 1e-12);
    }
}

TEST_CASE("lights_kappa") {
    const std::vector<int> cats{1, 2, 3};
    SUBCASE("identical raters") {
        const auto m = to_matrix({{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {1, 1, 1}});
        CHECK(*lights_kappa(m, cats).kappa == 1.0);
    }
    SUBCASE("two raters equal the pairwise value") {
        const auto m = to_matrix({{1, 2}, {2, 2}, {3, 1}, {1, 1}, {3, 3}});
        const std::vector<int> a{1, 2, 3, 1, 3}, b{2, 2, 1, 1, 3};
        const LightsKappa l = lights_kappa(m, cats);
        CHECK(*l.kappa == *cohen_kappa_weighted(a, b, cats));
        CHECK(*l.pairwise[0][1] == *l.kappa);
        CHECK_FALSE(l.pairwise[0][0]);
    }
    SUBCASE("three raters, one contrarian") {
        const auto m = to_matrix({{1, 1, 3}, {2, 2, 2}, {3, 3, 1}, {1, 2, 3}, {2, 2, 1}});
        const std::vector<int> a{1, 2, 3, 1, 2}, b{1, 2, 3, 2, 2}, c{3, 2, 1, 3, 1};
        const double expected = (*oracle::kappa(a, b, cats, false) + *oracle::kappa(a, c, cats, false) +
                                 *oracle::kappa(b, c, cats, false)) /
                                3.0;
        CHECK(std::abs(*lights_kappa(m, cats).kappa - expected) < 1e-12);
    }
    SUBCASE("missing cells drop rows") {
        auto m = to_matrix({{1, 1}, {2, 3}, {3, 3}, {1, 2}});
        m.cells[1][1].reset();
        const LightsKappa l = lights_kappa(m, cats);
        CHECK(l.dropped_rows == 1);
    }
    SUBCASE("undefined pairs are excluded") {
        const auto m = to_matrix({{2, 2, 1}, {2, 2, 3}, {2, 2, 2}});
        const LightsKappa l = lights_kappa(m, cats);
        CHECK(l.excluded_pairs == 1);
        REQUIRE(l.kappa);
    }
    CHECK(kind_of([&] { lights_kappa(to_matrix({{1}, {2}}), cats); }) == ErrorKind::invalid_argument);
}

TEST_CASE("icc_2_1") {
    SUBCASE("identical raters") {
        const auto m = to_matrix({{1, 1, 1}, {4, 4, 4}, {2, 2, 2}, {7, 7, 7}});
        CHECK(*icc_2_1(m).icc == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("a constant offset is penalised") {
        const auto m = to_matrix({{1, 3}, {4, 6}, {2, 4}, {7, 9}});
        CHECK(*icc_2_1(m).icc < 1.0);
    }
    SUBCASE("reference data set with F-based interval") {
        const auto m = to_matrix({{9, 2, 5, 8}, {6, 1, 3, 2}, {8, 4, 6, 8}, {7, 1, 2, 6}, {10, 5, 6, 9}, {6, 2, 4, 7}});
        const IccResult r = icc_2_1(m);
        CHECK(*r.icc == doctest::Approx(0.2897637795275591).epsilon(1e-12));
        CHECK(*r.ci95_lo == doctest::Approx(0.018786513374712016).epsilon(1e-6));
        CHECK(*r.ci95_hi == doctest::Approx(0.761084369648953).epsilon(1e-6));
    }
    SUBCASE("random matrices against the ANOVA oracle") {
        std::mt19937 gen(77);
        std::normal_distribution<double> nd(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<std::vector<double>> x(20, std::vector<double>(5));
            RaterMatrix m;
            for (auto& row : x) {
                const double subject = 3.0 * nd(gen);
                std::vector<std::optional<double>> cells;
                for (std::size_t j = 0; j < row.size(); ++j) {
                    row[j] = subject + 0.2 * double(j) + nd(gen);
                    cells.push_back(row[j]);
                }
                m.cells.push_back(cells);
            }
            const IccResult r = icc_2_1(m);
            const oracle::Anova a = oracle::icc21(x);
            CHECK(std::abs(*r.icc - a.icc) < 1e-9);
            CHECK(std::abs(r.ms_rows - a.msr) < 1e-9);
            CHECK(std::abs(r.ms_cols - a.msc) < 1e-9);
            CHECK(std::abs(r.ms_error - a.mse) < 1e-9);
            CHECK(*r.ci95_lo < *r.icc);
            CHECK(*r.icc < *r.ci95_hi);

            RaterMatrix shifted = m;
            for (auto& row : shifted.cells)
                for (auto& c : row) *c += 100.0;
            CHECK(std::abs(*icc_2_1(shifted).icc - *r.icc) < 1e-9);
        }
    }
    SUBCASE("no between-case variance") {
        const auto m = to_matrix({{3, 4}, {3, 4}, {3, 4}});
        CHECK_FALSE(icc_2_1(m).icc);
    }
}

TEST_CASE("pearson and linear_regression") {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{3, 5, 7, 9}, neg{-1, -2, -3, -4};
    CHECK(*pearson(x, y) == doctest::Approx(1.0));
    CHECK(*pearson(x, neg) == doctest::Approx(-1.0));
    const std::vector<double> a{1, 2, 3}, b{1, 3, 2};
    CHECK(*pearson(a, b) == doctest::Approx(0.5));
    const std::vector<double> c{5, 5, 5};
    CHECK_FALSE(pearson(a, c));

    const LinearFit exact = linear_regression(x, y);
    CHECK(exact.slope == doctest::Approx(2.0));
    CHECK(exact.intercept == doctest::Approx(1.0));
    CHECK(*exact.r_squared == doctest::Approx(1.0));
    const LinearFit flat = linear_regression(a, c);
    CHECK(flat.slope == 0.0);
    CHECK_FALSE(flat.r_squared);
    const std::vector<double> px{0, 1, 2}, py{0, 1, 1};
    const LinearFit f = linear_regression(px, py);
    CHECK(f.slope == doctest::Approx(0.5));
    CHECK(f.intercept == doctest::Approx(1.0 / 6.0));
    CHECK(kind_of([&] { linear_regression(c, a); }) == ErrorKind::invalid_argument);
}
