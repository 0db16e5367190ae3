#include <gtest/gtest.h>

#include <cmath>

#include "elcs/dataset.hpp"
#include "support.hpp"

using namespace elcs;
using namespace elcs::testing;

namespace {

std::shared_ptr<const Dataset> table_data(std::int64_t n00, std::int64_t n01, std::int64_t n10, std::int64_t n11) {
    std::vector<Code> x, y;
    auto add = [&](Code a, Code b, std::int64_t n) {
        for (std::int64_t i = 0; i < n; ++i) x.push_back(a), y.push_back(b);
    };
    add(0, 0, n00);
    add(0, 1, n01);
    add(1, 0, n10);
    add(1, 1, n11);
    return std::make_shared<const Dataset>(std::vector<std::string>{"X", "Y"}, std::vector<int>{2, 2},
                                           std::vector<std::vector<Code>>{x, y});
}

}  // namespace

TEST(OracleCi, ChainAndCollider) {
    auto chain = oracle_for(make_dag({"X", "Z", "Y"}, {{"X", "Z"}, {"Z", "Y"}}));
    EXPECT_TRUE(chain.independent(0, 2, {1}));
    auto collider = oracle_for(make_dag({"X", "Z", "Y"}, {{"X", "Z"}, {"Y", "Z"}}));
    EXPECT_FALSE(collider.independent(0, 2, {1}));
    EXPECT_TRUE(collider.independent(0, 2, {}));
    EXPECT_EQ(collider.test_count(), 2u);
}

TEST(OracleCi, AssocConvention) {
    auto e = oracle_for(make_dag({"X", "Y", "Z"}, {{"X", "Y"}}));
    EXPECT_EQ(e.assoc(0, 1, {}), 1.0);
    EXPECT_EQ(e.assoc(0, 2, {}), 0.0);
    EXPECT_EQ(e.test_count(), 2u);
}

TEST(G2Ci, SampledStrongDependence) {
    const auto net = parse_bif(R"(
network xy { }
variable X { type discrete [ 2 ] { a, b }; }
variable Y { type discrete [ 2 ] { a, b }; }
probability ( X ) { table 0.5, 0.5; }
probability ( Y | X ) { (a) 0.9, 0.1; (b) 0.1, 0.9; }
)");
    auto e = CiEngine::g2(std::make_shared<const Dataset>(sample(net, 5000, 1)), {});
    const auto r = e.test(0, 1, {});
    EXPECT_FALSE(r.independent);
    EXPECT_LT(r.p_value, 1e-6);
    EXPECT_TRUE(r.reliable);
}

TEST(G2Ci, AssocMatchesStatistic) {
    auto e = CiEngine::g2(table_data(30, 10, 10, 30));
    EXPECT_NEAR(e.assoc(0, 1, {}), 20.93, 0.01);
    auto same = CiEngine::g2(table_data(20, 0, 0, 20));
    EXPECT_GT(same.assoc(0, 1, {}), 0.0);
}

TEST(G2Ci, IndependentTable) {
    auto e = CiEngine::g2(table_data(25, 25, 25, 25));
    const auto r = e.test(0, 1, {});
    EXPECT_TRUE(r.independent);
    EXPECT_NEAR(r.p_value, 1.0, 1e-9);
}

TEST(G2Ci, UnreliableTestsAreForcedDependent) {
    // 8 rows, dof 1: 8 < 10 * 1
    auto e = CiEngine::g2(table_data(2, 2, 2, 2), {0.01, 10.0, std::nullopt});
    const auto r = e.test(0, 1, {});
    EXPECT_FALSE(r.reliable);
    EXPECT_FALSE(r.independent);
    EXPECT_EQ(e.unreliable_count(), 1u);

    auto relaxed = CiEngine::g2(table_data(2, 2, 2, 2), {0.01, 0.0, std::nullopt});
    EXPECT_TRUE(relaxed.independent(0, 1, {}));
}

TEST(CiEngine, BudgetAndPreconditions) {
    CiOptions opts;
    opts.max_cond_size = 1;
    auto e = oracle_for(trace_dag(), opts);
    EXPECT_TRUE(e.admits(1));
    EXPECT_FALSE(e.admits(2));
    EXPECT_THROW(e.test(0, 1, {2, 3}), BudgetError);
    EXPECT_THROW(e.test(0, 0, {}), std::invalid_argument);
    EXPECT_THROW(e.test(0, 1, {3, 2}), std::invalid_argument);
    EXPECT_THROW(e.test(0, 99, {}), std::out_of_range);
    EXPECT_EQ(e.test_count(), 0u);
}

TEST(CiEngine, BadAlphaIsUsageError) {
    EXPECT_THROW(oracle_for(trace_dag(), {0.0, 5.0, std::nullopt}), UsageError);
    EXPECT_THROW(oracle_for(trace_dag(), {1.5, 5.0, std::nullopt}), UsageError);
}
