#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nucmorph/error.hpp"
#include "nucmorph/morphometry.hpp"
#include "oracles.hpp"

using namespace nucmorph;

namespace {

NucleusRegion region(double area, double ecc = 0.5, double sol = 1.0, bool border = false) {
    NucleusRegion r;
    r.area_um2 = area;
    r.eccentricity = ecc;
    r.solidity = sol;
    r.touches_border = border;
    return r;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::io;
}

std::optional<double> value_of(const std::vector<NamedValue>& values, const std::string& name) {
    for (const auto& [n, v] : values) {
        if (n == name) return v;
    }
    FAIL("missing parameter " << name);
    return std::nullopt;
}

}  // namespace

TEST_CASE("filter_regions") {
    const std::vector<NucleusRegion> rs{region(5.0), region(7.0), region(8.0, 0.5, 1.0, true)};
    FilterConfig cfg;
    auto kept = filter_regions(rs, cfg);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].area_um2 == 7.0);
    CHECK(kept[1].area_um2 == 8.0);

    cfg.min_area_um2 = 0.0;
    CHECK(filter_regions(rs, cfg).size() == 3);
    cfg.exclude_border_touching = true;
    CHECK(filter_regions(rs, cfg).size() == 2);
    cfg.min_area_um2 = 100.0;
    CHECK(filter_regions(rs, cfg).empty());
}

TEST_CASE("FilterConfig validation") {
    FilterConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.min_area_um2 = -1.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.indent_thresholds = {1.2};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.large_thresholds_um2 = {0.0};
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("size_stats worked example") {
    const std::vector<double> areas{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    const std::vector<double> thresholds{37.8, 50.3};
    const SizeStats s = size_stats(areas, thresholds);
    CHECK(s.area.mean == doctest::Approx(55.0).epsilon(1e-12));
    CHECK(s.area.median == 55.0);
    CHECK(*s.area.sd == doctest::Approx(30.2765).epsilon(1e-5));
    CHECK(s.area.p90 == doctest::Approx(91.0).epsilon(1e-12));
    CHECK(s.p90_over_median == doctest::Approx(1.654545).epsilon(1e-6));
    CHECK(s.mean_top10pct == 100.0);
    CHECK(s.pct_large[1] == 0.5);
    REQUIRE(s.area.skewness);
    CHECK(std::abs(*s.area.skewness) < 1e-12);
}

TEST_CASE("size_stats degenerate inputs") {
    const std::vector<double> t{37.8};
    const std::vector<double> same(6, 30.0);
    const SizeStats s = size_stats(same, t);
    CHECK(*s.area.sd == 0.0);
    CHECK(s.p90_over_median == 1.0);
    CHECK(s.pct_large[0] == 0.0);
    CHECK_FALSE(s.area.skewness);

    const std::vector<double> one{4.0};
    CHECK(kind_of([&] { size_stats(one, t); }) == ErrorKind::sd_undefined);
    CHECK(kind_of([&] { size_stats(std::vector<double>{}, t); }) == ErrorKind::empty_sample);

    const std::vector<double> two{4.0, 6.0};
    const SizeStats s2 = size_stats(two, t);
    CHECK_FALSE(s2.area.skewness);
    CHECK(s2.area.median == 5.0);
    CHECK(s2.mean_top10pct == 6.0);
}

TEST_CASE("describe matches direct formulas on random samples") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(1.0, 80.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial) % 10;
        std::vector<double> v(n);
        for (auto& x : v) x = u(gen);
        const Descriptive d = describe(v);

        std::vector<double> s = v;
        std::sort(s.begin(), s.end());
        const double m = oracle::mean(v);
        double m2 = 0.0, m3 = 0.0;
        for (double x : v) {
            m2 += (x - m) * (x - m) / double(n);
            m3 += (x - m) * (x - m) * (x - m) / double(n);
        }
        const double g1 = m3 / std::pow(m2, 1.5);
        const double skew = g1 * std::sqrt(double(n) * double(n - 1)) / double(n - 2);
        const double h = 0.9 * double(n - 1);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const double p90 = lo + 1 < n ? s[lo] + (h - double(lo)) * (s[lo + 1] - s[lo]) : s[lo];
        const double median = n % 2 ? s[n / 2] : (s[n / 2 - 1] + s[n / 2]) / 2.0;

        CHECK(d.mean == doctest::Approx(m).epsilon(1e-9));
        CHECK(d.median == doctest::Approx(median).epsilon(1e-9));
        CHECK(*d.sd == doctest::Approx(oracle::sample_sd(v)).epsilon(1e-9));
        CHECK(d.p90 == doctest::Approx(p90).epsilon(1e-9));
        REQUIRE(d.skewness);
        CHECK(*d.skewness == doctest::Approx(skew).epsilon(1e-9));
    }
}

TEST_CASE("shape_stats") {
    SUBCASE("all convex") {
        const std::vector<NucleusRegion> rs{region(10, 0.2), region(12, 0.4), region(14, 0.6)};
        const std::vector<double> cut{0.913, 0.936, 0.943};
        const ShapeStats s = shape_stats(rs, cut);
        for (double p : s.pct_indented) CHECK(p == 0.0);
        CHECK(s.inverted_mean_solidity == 0.0);
    }
    SUBCASE("indentation counting is strict") {
        const std::vector<NucleusRegion> rs{region(10, 0.1, 0.90), region(10, 0.1, 0.92), region(10, 0.1, 0.95)};
        const std::vector<double> cut{0.913, 0.92};
        const ShapeStats s = shape_stats(rs, cut);
        CHECK(s.pct_indented[0] == doctest::Approx(1.0 / 3.0));
        CHECK(s.pct_indented[1] == doctest::Approx(1.0 / 3.0));
        CHECK(s.inverted_mean_solidity == doctest::Approx(1.0 - (0.90 + 0.92 + 0.95) / 3.0));
    }
    SUBCASE("eccentricity summary") {
        const std::vector<NucleusRegion> rs{region(10, 0.0), region(10, 0.0), region(10, 1.0)};
        const ShapeStats s = shape_stats(rs, std::vector<double>{0.9});
        CHECK(s.eccentricity.mean == doctest::Approx(1.0 / 3.0));
        CHECK(*s.eccentricity.sd == doctest::Approx(0.57735).epsilon(1e-5));
    }
}

TEST_CASE("roi_features") {
    SUBCASE("filter drops the small blob") {
        PixelGrid g(40, 20, 0.25);
        for (int y = 1; y < 11; ++y)
            for (int x = 1; x < 21; ++x) g.set(x, y, 1);  // 200 px = 12.5 um^2
        for (int y = 12; y < 17; ++y)
            for (int x = 25; x < 45 && x < 40; ++x) g.set(x, y, 1);  // 5 x 15 = 75 px
        for (int y = 12; y < 17; ++y)
            for (int x = 1; x < 6; ++x) g.set(x, y, 1);  // 25 px
        const std::vector<NucleusRegion> rs = region_properties(label_components(g));
        REQUIRE(rs.size() == 3);
        FilterConfig cfg;
        CHECK(filter_regions(rs, cfg).size() == 1);
    }
    SUBCASE("one 200-px and one 100-px blob at 0.25 mpp") {
        PixelGrid g(60, 30, 0.25);
        for (int y = 1; y < 11; ++y)
            for (int x = 1; x < 21; ++x) g.set(x, y, 1);
        for (int y = 15; y < 25; ++y)
            for (int x = 30; x < 40; ++x) g.set(x, y, 1);
        FilterConfig cfg;
        cfg.min_area_um2 = 7.0;
        const auto rs = region_properties(label_components(g));
        CHECK(rs[0].area_um2 == 12.5);
        CHECK(rs[1].area_um2 == 6.25);
        const RoiFeatureSet f = roi_features(g, cfg);
        CHECK(f.n_nuclei == 1);
        CHECK(f.size.area.mean == 12.5);
        CHECK_FALSE(f.size.area.sd);
        CHECK_FALSE(f.size.area.skewness);
    }
    SUBCASE("empty grid") {
        const PixelGrid g(10, 10, 0.25);
        CHECK(kind_of([&] { roi_features(g, FilterConfig{}); }) == ErrorKind::empty_sample);
    }
    SUBCASE("deterministic") {
        PixelGrid g(50, 50, 0.25);
        std::mt19937 gen(9);
        std::bernoulli_distribution on(0.4);
        for (auto& v : g.labels()) v = on(gen);
        FilterConfig cfg;
        cfg.min_area_um2 = 0.5;
        const auto a = named_values(roi_features(g, cfg));
        const auto b = named_values(roi_features(g, cfg));
        CHECK(a == b);
    }
}

TEST_CASE("named_values and parameter_names agree") {
    const std::vector<double> areas{10, 12, 30, 44, 51};
    std::vector<NucleusRegion> rs;
    for (double a : areas) rs.push_back(region(a, a / 100.0, 0.9 + a / 1000.0));
    FilterConfig cfg;
    const auto f = roi_features(rs, cfg);
    const auto values = named_values(f);
    const auto names = parameter_names(cfg);
    REQUIRE(values.size() == names.size());
    for (std::size_t i = 0; i < names.size(); ++i) CHECK(values[i].first == names[i]);
    CHECK(value_of(values, "pct_large_gt_37.8") == doctest::Approx(0.4));
    CHECK(value_of(values, "pct_large_gt_50.3") == doctest::Approx(0.2));
    CHECK(value_of(values, "inverted_mean_solidity") == doctest::Approx(1.0 - f.shape.solidity.mean));
}

TEST_CASE("aggregate_case") {
    FilterConfig cfg;
    std::vector<NucleusRegion> a, b;
    for (double x : {10.0, 20.0, 30.0}) a.push_back(region(x));
    for (double x : {10.0, 30.0}) b.push_back(region(x));
    const RoiFeatureSet fa = roi_features(a, cfg);
    const RoiFeatureSet fb = roi_features(b, cfg);

    SUBCASE("single ROI is the identity") {
        const std::vector<RoiFeatureSet> one{fa};
        const auto c = aggregate_case("c1", one);
        CHECK(c.means == named_values(fa));
        CHECK(c.n_nuclei == 3);
    }
    SUBCASE("mean of sd values, undefined skewness skipped") {
        const std::vector<RoiFeatureSet> two{fa, fb};
        const auto c = aggregate_case("c1", two);
        CHECK(c.n_nuclei == 5);
        const double sd_a = *fa.size.area.sd;
        const double sd_b = *fb.size.area.sd;
        CHECK(*value_of(c.means, "area_sd") == doctest::Approx((sd_a + sd_b) / 2.0));
        REQUIRE(fa.size.area.skewness);
        CHECK_FALSE(fb.size.area.skewness);
        CHECK(value_of(c.means, "area_skewness") == fa.size.area.skewness);
    }
    SUBCASE("all undefined stays undefined") {
        const std::vector<RoiFeatureSet> two{fb, fb};
        CHECK_FALSE(value_of(aggregate_case("c", two).means, "area_skewness"));
    }
    SUBCASE("empty list is an error") {
        CHECK_THROWS_AS(aggregate_case("c", std::vector<RoiFeatureSet>{}), Error);
    }
    SUBCASE("sd {8, 10} averages to 9") {
        RoiFeatureSet x = fa, y = fa;
        x.size.area.sd = 8.0;
        y.size.area.sd = 10.0;
        const std::vector<RoiFeatureSet> two{x, y};
        CHECK(*value_of(aggregate_case("c", two).means, "area_sd") == 9.0);
    }
}
