#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "nucmorph/biostats.hpp"
#include "nucmorph/data_io.hpp"
#include "nucmorph/morphometry.hpp"
#include "nucmorph/sampling.hpp"
#include "nucmorph/seg_eval.hpp"
#include "nucmorph/synth.hpp"
#include "oracles.hpp"

using namespace nucmorph;

namespace {

PixelGrid random_blobs(std::mt19937& gen, int w, int h, double density, double mpp = 0.25) {
    PixelGrid g(w, h, mpp);
    std::bernoulli_distribution seed(density);
    for (auto& v : g.labels()) v = seed(gen) ? 1 : 0;
    // One smoothing pass so components have some body.
    PixelGrid out(w, h, mpp);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int n = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) n += g.contains(x + dx, y + dy) && g.at(x + dx, y + dy);
            out.set(x, y, n >= 3 ? 1 : 0);
        }
    }
    return out;
}

std::vector<double> random_values(std::mt19937& gen, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(gen);
    return v;
}

}  // namespace

TEST_CASE("region properties stay in range") {
    std::mt19937 gen(101);
    for (int trial = 0; trial < 40; ++trial) {
        const PixelGrid labels = label_components(random_blobs(gen, 40, 30, 0.3));
        std::size_t total = 0;
        for (const auto& r : region_properties(labels)) {
            CHECK(r.eccentricity >= 0.0);
            CHECK(r.eccentricity <= 1.0);
            CHECK(r.solidity > 0.0);
            CHECK(r.solidity <= 1.0);
            CHECK(r.area_um2 == doctest::Approx(double(r.pixel_count) * 0.0625));
            CHECK(r.bbox.min_x <= r.centroid.x);
            CHECK(r.centroid.x <= r.bbox.max_x + 1);
            total += r.pixel_count;
        }
        std::size_t fg = 0;
        for (Label v : labels.labels()) fg += v != 0;
        CHECK(total == fg);
    }
}

TEST_CASE("labelling is invariant to translation") {
    std::mt19937 gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        const PixelGrid a = random_blobs(gen, 30, 30, 0.25);
        PixelGrid b(36, 33, 0.25);
        for (int y = 0; y < 30; ++y)
            for (int x = 0; x < 30; ++x) b.set(x + 6, y + 3, a.at(x, y));
        const auto ra = region_properties(label_components(a));
        const auto rb = region_properties(label_components(b));
        REQUIRE(ra.size() == rb.size());
        for (std::size_t i = 0; i < ra.size(); ++i) {
            CHECK(ra[i].pixel_count == rb[i].pixel_count);
            CHECK(ra[i].solidity == doctest::Approx(rb[i].solidity).epsilon(1e-12));
            CHECK(ra[i].eccentricity == doctest::Approx(rb[i].eccentricity).epsilon(1e-9));
        }
    }
}

TEST_CASE("describe: shift and scale") {
    std::mt19937 gen(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto v = random_values(gen, 5 + trial % 20, 1.0, 50.0);
        std::vector<double> w;
        for (double x : v) w.push_back(2.5 * x + 10.0);
        const Descriptive a = describe(v);
        const Descriptive b = describe(w);
        CHECK(*b.sd == doctest::Approx(2.5 * *a.sd).epsilon(1e-9));
        CHECK(b.mean == doctest::Approx(2.5 * a.mean + 10.0).epsilon(1e-12));
        CHECK(*b.skewness == doctest::Approx(*a.skewness).epsilon(1e-7));
        CHECK(a.p90 >= a.median);
        CHECK(a.p90 <= *std::max_element(v.begin(), v.end()));

        std::vector<double> shuffled = v;
        std::shuffle(shuffled.begin(), shuffled.end(), gen);
        const Descriptive c = describe(shuffled);
        CHECK(c.mean == a.mean);
        CHECK(*c.sd == *a.sd);
    }
}

TEST_CASE("dice and matching invariants") {
    std::mt19937 gen(19);
    for (int trial = 0; trial < 30; ++trial) {
        const PixelGrid a = label_components(random_blobs(gen, 32, 32, 0.3));
        const PixelGrid b = label_components(random_blobs(gen, 32, 32, 0.3));
        CHECK(dice(a, b) == dice(b, a));
        if (a.max_label() > 0) CHECK(dice(a, a) == 1.0);
        PixelGrid binary = a;
        for (auto& v : binary.labels()) v = v ? 1 : 0;
        CHECK(dice(binary, b) == dice(a, b));

        const auto ra = region_properties(a);
        const MatchReport self = match_objects(ra, ra);
        CHECK(self.tp == ra.size());
        CHECK(self.fp == 0);
        CHECK(self.fn == 0);

        const auto rb = region_properties(b);
        const MatchReport m = match_objects(ra, rb, 0.1);
        std::set<Label> pred, gt;
        for (const auto& p : m.pairs) {
            CHECK(pred.insert(p.pred_id).second);
            CHECK(gt.insert(p.gt_id).second);
            CHECK(p.iou >= 0.1);
        }
        CHECK(m.tp + m.fp == ra.size());
        CHECK(m.tp + m.fn == rb.size());
    }
}

TEST_CASE("grid sample invariants") {
    std::mt19937 gen(23);
    for (int trial = 0; trial < 10; ++trial) {
        const PixelGrid g = label_components(random_blobs(gen, 120, 90, 0.2));
        const auto regions = region_properties(g);
        const SampleResult s = grid_sample(regions, 120, 90, GridSpec{}, 30);
        std::set<Label> ids(s.selected_region_ids.begin(), s.selected_region_ids.end());
        CHECK(ids.size() == s.selected_region_ids.size());
        const auto t = GridSpec{}.traversal(120, 90);
        CHECK(std::equal(s.fields_used.begin(), s.fields_used.end(), t.begin()));
        for (const auto& r : regions) {
            if (r.touches_border) CHECK(ids.count(r.id) == 0);
        }
    }
}

TEST_CASE("stratified sample covers both tails") {
    std::mt19937 gen(29);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 12 + static_cast<std::size_t>(trial) * 7;
        std::vector<NucleusRegion> regions(n);
        std::lognormal_distribution<double> area(3.0, 0.4);
        std::vector<double> areas;
        for (std::size_t i = 0; i < n; ++i) {
            regions[i].id = static_cast<Label>(i + 1);
            regions[i].area_um2 = area(gen);
            areas.push_back(regions[i].area_um2);
        }
        std::sort(areas.begin(), areas.end());
        const double q33 = quantile_sorted(areas, 1.0 / 3.0);
        const double q67 = quantile_sorted(areas, 2.0 / 3.0);
        const auto picked = stratified_sample_12(regions, static_cast<std::uint64_t>(trial));
        REQUIRE(picked.size() == 12);
        std::size_t low = 0, high = 0;
        std::set<Label> ids;
        for (const auto& r : picked) {
            low += r.area_um2 <= q33;
            high += r.area_um2 >= q67;
            ids.insert(r.id);
        }
        CHECK(low >= 4);
        CHECK(high >= 4);
        CHECK(ids.size() == 12);
    }
}

TEST_CASE("survival invariants") {
    std::mt19937 gen(31);
    const EventDefinition ev;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<SurvivalRecord> r;
        for (int i = 0; i < 15; ++i) r.push_back({"c" + std::to_string(i), double(1 + gen() % 30), SurvivalStatus::tumor_death});
        for (const auto& step : kaplan_meier(r, ev)) {
            double alive = 0.0;
            for (const auto& x : r) alive += x.time_months > step.time;
            CHECK(step.survival == doctest::Approx(alive / 15.0).epsilon(1e-12));
        }
        std::vector<double> x;
        for (int i = 0; i < 15; ++i) x.push_back(double(gen() % 5));
        const CoxFit f = cox_univariate(r, x, ev);
        if (!f.coefficient) continue;
        auto scaled = r;
        for (auto& s : scaled) s.time_months *= 12.0;
        CHECK(*cox_univariate(scaled, x, ev).coefficient == doctest::Approx(*f.coefficient).epsilon(1e-10));
        const double h = 1e-5;
        const double grad = (cox_log_partial_likelihood(r, x, ev, *f.coefficient + h) -
                             cox_log_partial_likelihood(r, x, ev, *f.coefficient - h)) /
                            (2.0 * h);
        CHECK(std::abs(grad) < 1e-6);
    }
}

TEST_CASE("kappa invariants") {
    std::mt19937 gen(37);
    const std::vector<int> cats{1, 2, 3};
    const std::vector<int> relabeled_cats{10, 20, 30};
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> a(15), b(15), a2(15), b2(15);
        for (std::size_t i = 0; i < 15; ++i) {
            a[i] = 1 + static_cast<int>(gen() % 3);
            b[i] = 1 + static_cast<int>(gen() % 3);
            a2[i] = a[i] * 10;
            b2[i] = b[i] * 10;
        }
        const auto k = cohen_kappa_weighted(a, b, cats);
        const auto k2 = cohen_kappa_weighted(a2, b2, relabeled_cats);
        REQUIRE(k.has_value() == k2.has_value());
        if (k) {
            CHECK(*k == doctest::Approx(*k2).epsilon(1e-12));
            CHECK((*k < 1.0 - 1e-12) == (a != b));
        }
    }
}

TEST_CASE("mask save then load is the identity") {
    std::mt19937 gen(41);
    fixture::TempDir dir;
    for (int trial = 0; trial < 10; ++trial) {
        const PixelGrid g = label_components(random_blobs(gen, 25 + trial, 17, 0.3, 0.5));
        save_mask(dir / "m.png", g, MaskMode::label);
        CHECK(load_mask(dir / "m.png", 0.5, MaskMode::label).grid == g);
        save_mask(dir / "b.png", g, MaskMode::binary);
        CHECK(load_mask(dir / "b.png", 0.5, MaskMode::binary).grid == g);
    }
}

TEST_CASE("features are identical across repeated runs") {
    SynthSpec spec;
    spec.seed = 55;
    const SynthRoi roi = generate_roi(spec);
    const RoiFeatureSet a = roi_features(roi.labels, FilterConfig{}, MaskMode::label);
    const RoiFeatureSet b = roi_features(roi.labels, FilterConfig{}, MaskMode::label);
    const std::vector<RoiFeatureSet> rois{a};
    const std::vector<RoiFeatureSet> rois_b{b};
    CHECK(dump_features({aggregate_case("x", rois)}, {{"r"}}) == dump_features({aggregate_case("x", rois_b)}, {{"r"}}));
}
