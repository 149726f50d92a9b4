#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "bnpid/parallel.hpp"
#include "bnpid/rng.hpp"

using namespace bnpid;

TEST(Substream, SameKeyGivesIdenticalSequence) {
    RngStream a = substream(42, 0), b = substream(42, 0);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(Substream, DifferentIndexDiffers) {
    RngStream a = substream(42, 0), b = substream(42, 1);
    int differing = 0;
    for (int i = 0; i < 1000; ++i) differing += a.uniform() != b.uniform();
    EXPECT_GT(differing, 990);
}

TEST(Substream, ZeroSeedProducesUnitInterval) {
    RngStream r = substream(0, 0);
    std::set<double> seen;
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        seen.insert(u);
    }
    EXPECT_GT(seen.size(), 9990u);
}

TEST(Substream, OpenUniformNeverHitsEndpoints) {
    RngStream r = substream(7, 3);
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform_open();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Substream, UniformMomentsAndLagCorrelation) {
    RngStream r = substream(123, 9);
    const int n = 200000;
    double s = 0, s2 = 0, lag = 0, prev = r.uniform();
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        s += u;
        s2 += u * u;
        lag += (u - 0.5) * (prev - 0.5);
        prev = u;
    }
    EXPECT_NEAR(s / n, 0.5, 3 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(s2 / n, 1.0 / 3, 0.003);
    EXPECT_NEAR(lag / n / (1.0 / 12), 0.0, 0.015);
}

TEST(Substream, ChildDoesNotDependOnParentPosition) {
    RngStream p = substream(5, 2);
    RngStream c1 = p.child(4);
    for (int i = 0; i < 17; ++i) p();
    RngStream c2 = p.child(4);
    for (int i = 0; i < 100; ++i) ASSERT_EQ(c1(), c2());
    RngStream other = p.child(5);
    EXPECT_NE(c1(), other());
}

TEST(DeriveSeed, TagsSeparateFamilies) {
    EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
    EXPECT_NE(derive_seed(1, 1), derive_seed(2, 1));
    EXPECT_EQ(derive_seed(9, 3), derive_seed(9, 3));
    EXPECT_NE(substream(derive_seed(1, 1), 0)(), substream(1, 0)());
}

TEST(ParallelFor, ResultsIndependentOfWorkerCount) {
    auto run = [](int workers) {
        std::vector<std::uint64_t> out(5000);
        parallel_for(out.size(), workers, [&](std::size_t i) {
            RngStream r = substream(77, i);
            out[i] = r() ^ r();
        });
        return out;
    };
    EXPECT_EQ(run(1), run(8));
}

TEST(ParallelFor, RethrowsLowestIndexFailure) {
    try {
        parallel_for(100, 4, [](std::size_t i) {
            if (i == 30 || i == 70) throw std::runtime_error(std::to_string(i));
        });
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "30");
    }
}
