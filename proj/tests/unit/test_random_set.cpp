#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "bnpid/errors.hpp"
#include "bnpid/random_set.hpp"
#include "bnpid/rng.hpp"
#include "bnpid/scenarios.hpp"

using namespace bnpid;

namespace {

SetDrawBatch constant_batch(double lo, double hi, int n) {
    SetDrawBatch b(DrawSource::Prior, "test");
    for (int i = 0; i < n; ++i) b.add(IntervalSet(lo, hi));
    return b;
}

SetDrawBatch random_batch(std::uint64_t seed, int n) {
    RngStream r = substream(seed, 0);
    SetDrawBatch b(DrawSource::Posterior, "test");
    for (int i = 0; i < n; ++i) {
        // Coarse values so ties and shared endpoints actually occur.
        const double a = std::round(20 * r.uniform()) / 4, w = std::round(8 * r.uniform()) / 4;
        b.add(IntervalSet(a, a + w));
    }
    return b;
}

SetDrawBatch toy_prior(int n, std::uint64_t seed) {
    return draw_set_batch(Scenario(default_config(ScenarioId::ToyAnalytic)), DrawSource::Prior, nullptr, n, seed);
}

}  // namespace

TEST(IntervalSet, RejectsInvertedBounds) {
    EXPECT_THROW(IntervalSet(1, 0), ParameterError);
    const IntervalSet s(0, 2);
    EXPECT_TRUE(s.contains(0.0));
    EXPECT_TRUE(s.contains(2.0));
    EXPECT_TRUE(s.intersects(IntervalSet(2, 3)));
    EXPECT_FALSE(s.intersects(IntervalSet(2.0001, 3)));
}

TEST(SetDrawBatch, SkipWarningAboveFivePercent) {
    SetDrawBatch b = constant_batch(0, 1, 95);
    for (int i = 0; i < 5; ++i) b.add_skip();
    EXPECT_FALSE(b.warning());
    b.add_skip();
    EXPECT_TRUE(b.warning());
    EXPECT_NEAR(b.skip_rate(), 6.0 / 101, 1e-15);
}

TEST(EstimateCoverage, ConstantBatch) {
    const auto grid = make_grid(-1, 6, 0.5);
    const auto c = estimate_coverage(constant_batch(0, 5, 10), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(c.values[i], grid[i] >= 0 && grid[i] <= 5 ? 1.0 : 0.0);
    EXPECT_EQ(c.mc_draws, 10u);
}

TEST(EstimateCoverage, ToyPriorMatchesClosedForm) {
    const auto batch = toy_prior(10000, 71);
    const std::vector<double> grid{0.5, 1.0, 1.75};
    const auto c = estimate_coverage(batch, grid);
    EXPECT_NEAR(c.values[0], 0.5, 0.02);
    EXPECT_GE(c.values[1], 0.99);
    EXPECT_NEAR(c.values[2], 0.25, 0.02);
}

TEST(EstimateCoverage, EqualsEndpointEcdfDifference) {
    for (std::uint64_t seed : {72u, 73u, 74u}) {
        const auto batch = random_batch(seed, 500);
        std::vector<double> lo, hi;
        for (const auto& d : batch.draws()) {
            lo.push_back(d.lo());
            hi.push_back(d.hi());
        }
        std::sort(lo.begin(), lo.end());
        std::sort(hi.begin(), hi.end());
        const auto grid = make_grid(-1, 8, 0.125);
        const auto c = estimate_coverage(batch, grid);
        const double n = double(batch.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            // #{lo <= g} - #{hi < g}
            const auto lo_count = std::upper_bound(lo.begin(), lo.end(), grid[k]) - lo.begin();
            const auto hi_left_count = std::lower_bound(hi.begin(), hi.end(), grid[k]) - hi.begin();
            ASSERT_EQ(c.values[k], double(lo_count - hi_left_count) / n) << grid[k];
        }
    }
}

TEST(EstimateCoverage, RejectsEmptyBatchAndBadGrid) {
    SetDrawBatch empty(DrawSource::Prior, "test");
    EXPECT_THROW(estimate_coverage(empty, {0.0}), EmptyBatchError);
    EXPECT_THROW(estimate_coverage(constant_batch(0, 1, 1), {0.5, 0.5}), ParameterError);
}

TEST(EstimateCapacity, WholeLineAndToyProbe) {
    const auto batch = toy_prior(10000, 75);
    EXPECT_EQ(estimate_capacity(batch, IntervalSet(-1e18, 1e18)), 1.0);
    EXPECT_NEAR(estimate_capacity(batch, IntervalSet(1.5, 1.8)), 0.5, 0.02);
}

TEST(EstimateCapacity, SingletonEqualsCoverage) {
    const auto batch = random_batch(76, 400);
    const auto grid = make_grid(-1, 8, 0.125);
    const auto c = estimate_coverage(batch, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        ASSERT_EQ(estimate_capacity(batch, IntervalSet::point(grid[k])), c.values[k]);
    }
}

TEST(EstimateCapacity, MonotoneUnderNesting) {
    const auto batch = random_batch(77, 400);
    RngStream r = substream(78, 0);
    for (int i = 0; i < 100; ++i) {
        const double a = 8 * r.uniform() - 1, w = 2 * r.uniform();
        const double ea = r.uniform(), eb = r.uniform();
        const IntervalSet inner(a, a + w), outer(a - ea, a + w + eb);
        ASSERT_LE(estimate_capacity(batch, inner), estimate_capacity(batch, outer));
    }
}

TEST(CredibleRegion, ConstantDraws) {
    for (double alpha : {0.1, 0.5, 0.95, 1.0}) {
        const auto cr = credible_region(constant_batch(2, 3, 50), alpha);
        EXPECT_EQ(cr.region, IntervalSet(2, 3));
        EXPECT_EQ(cr.containment, 1.0);
    }
}

TEST(CredibleRegion, AlphaOneIsHull) {
    const auto batch = random_batch(79, 300);
    double lo = 1e9, hi = -1e9;
    for (const auto& d : batch.draws()) {
        lo = std::min(lo, d.lo());
        hi = std::max(hi, d.hi());
    }
    EXPECT_EQ(credible_region(batch, 1.0).region, IntervalSet(lo, hi));
}

TEST(CredibleRegion, MeetsTargetAndIsMonotone) {
    const auto batch = random_batch(80, 1000);
    double prev_width = -1;
    for (double alpha : {0.5, 0.7, 0.8, 0.9, 0.95, 0.99}) {
        const auto cr = credible_region(batch, alpha);
        EXPECT_GE(cr.containment, alpha);
        EXPECT_DOUBLE_EQ(cr.containment, estimate_containment(batch, cr.region));
        EXPECT_GE(cr.region.width(), prev_width);
        prev_width = cr.region.width();
    }
    EXPECT_THROW(credible_region(batch, 0.0), ParameterError);
    EXPECT_THROW(credible_region(batch, 1.5), ParameterError);
}

TEST(CredibleRegion, HeldOutContainmentIntervalCensored) {
    const Scenario s(default_config(ScenarioId::IntervalCensored));
    RngStream dr = substream(81, 0);
    const Dataset data = s.generate_data(dr);
    const auto fit = draw_set_batch(s, DrawSource::Posterior, &data, 1000, 82, 4);
    const auto held = draw_set_batch(s, DrawSource::Posterior, &data, 1000, 83, 4);
    const auto cr = credible_region(fit, 0.95);
    EXPECT_GE(estimate_containment(held, cr.region), 0.93);
    EXPECT_TRUE(cr.region.contains(point_estimate_set(fit)));
}

TEST(PointEstimate, ConstantAndDegenerate) {
    EXPECT_EQ(point_estimate_set(constant_batch(0, 5, 7)), IntervalSet(0, 5));
    SetDrawBatch empty(DrawSource::Prior, "test");
    EXPECT_THROW(point_estimate_set(empty), EmptyBatchError);
}

TEST(MakeGrid, InclusiveEndpoint) {
    const auto g = make_grid(0, 2, 0.05);
    ASSERT_EQ(g.size(), 41u);
    EXPECT_NEAR(g.back(), 2.0, 1e-12);
    EXPECT_THROW(make_grid(1, 0, 0.1), ParameterError);
}
