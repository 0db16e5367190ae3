#include <gtest/gtest.h>

#include <cmath>

#include "elcs/stats.hpp"

using namespace elcs;

namespace {

ContingencyTable table(int rx, int ry, std::vector<std::int64_t> counts) {
    ContingencyTable t;
    t.rx = rx;
    t.ry = ry;
    t.strata = counts.size() / static_cast<std::size_t>(rx * ry);
    for (auto c : counts) t.n += c;
    t.counts = std::move(counts);
    return t;
}

}  // namespace

TEST(G2, IndependentTableIsZero) {
    const auto g = g2_statistic(table(2, 2, {25, 25, 25, 25}));
    EXPECT_NEAR(g.statistic, 0.0, 1e-12);
    EXPECT_EQ(g.dof, 1);
}

TEST(G2, TwoByTwo) {
    // 2 * (60 ln 1.5 + 20 ln 0.5)
    const auto g = g2_statistic(table(2, 2, {30, 10, 10, 30}));
    EXPECT_NEAR(g.statistic, 20.929926, 1e-6);
    EXPECT_NEAR(g.statistic, 2.0 * (60.0 * std::log(1.5) + 20.0 * std::log(0.5)), 1e-12);
    EXPECT_EQ(g.dof, 1);
}

TEST(G2, TwoStrataSum) {
    const auto g = g2_statistic(table(2, 2, {5, 0, 0, 5, 5, 0, 0, 5}));
    EXPECT_NEAR(g.statistic, 40.0 * std::log(2.0), 1e-9);
    EXPECT_EQ(g.dof, 2);
}

TEST(G2, EmptyRowsReduceDof) {
    // 3x2 table where the middle row is empty: (2-1)(2-1) = 1
    const auto g = g2_statistic(table(3, 2, {4, 1, 0, 0, 1, 4}));
    EXPECT_EQ(g.dof, 1);
    // a single nonempty column leaves nothing to test
    EXPECT_EQ(g2_statistic(table(2, 2, {3, 0, 5, 0})).dof, 0);
}

TEST(ChiSquare, KnownQuantiles) {
    EXPECT_DOUBLE_EQ(chi2_sf(0.0, 3), 1.0);
    EXPECT_NEAR(chi2_sf(3.841459, 1), 0.05, 1e-6);
    EXPECT_NEAR(chi2_sf(6.634897, 1), 0.01, 1e-6);
    EXPECT_NEAR(chi2_sf(2.0, 2), std::exp(-1.0), 1e-12);
    EXPECT_NEAR(chi2_sf(18.307038, 10), 0.05, 1e-6);
}

TEST(ChiSquare, MonotoneAndBounded) {
    for (int dof : {1, 2, 5, 30, 200}) {
        double prev = 1.0;
        for (double x = 0.0; x < 400.0; x += 3.7) {
            const double p = chi2_sf(x, dof);
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, prev + 1e-15);
            prev = p;
        }
    }
}

TEST(ChiSquare, RejectsBadArguments) {
    EXPECT_THROW(chi2_sf(1.0, 0), std::invalid_argument);
    EXPECT_THROW(chi2_sf(-1.0, 2), std::invalid_argument);
}

TEST(GammaQ, ExponentialCase) {
    for (double x : {0.1, 1.0, 7.5, 40.0}) EXPECT_NEAR(gamma_q(1.0, x), std::exp(-x), 1e-14);
}
