#include <gtest/gtest.h>

#include "elcs/elcs.hpp"
#include "support.hpp"

using namespace elcs;
using namespace elcs::testing;

TEST(Elcs, ColliderChainResolvedThroughNeighbour) {
    const auto dag = load_bif(fixture_path("collider_chain.bif")).dag();
    auto e = oracle_for(dag);
    const Var t = dag.index("T");
    const auto out = elcs::elcs(e, t);
    EXPECT_EQ(out.p, vars(dag, {"Y"}));
    EXPECT_EQ(out.c, vars(dag, {"Z"}));
    EXPECT_TRUE(out.un.empty());
    EXPECT_EQ(out.stats.termination, Termination::Resolved);
    ASSERT_GE(out.visit_order.size(), 2u);
    EXPECT_EQ(out.visit_order[0], t);
    EXPECT_EQ(out.visit_order[1], dag.index("Y"));
    EXPECT_TRUE(out.graph.directed(dag.index("F"), dag.index("Y")));
    EXPECT_TRUE(out.graph.directed(dag.index("X"), dag.index("Y")));
}

TEST(Elcs, TraceResolvedByOneBlanket) {
    const auto dag = trace_dag();
    auto e = oracle_for(dag);
    const auto out = elcs::elcs(e, dag.index("T"));
    EXPECT_EQ(out.p, vars(dag, {"E", "J"}));
    EXPECT_EQ(out.c, vars(dag, {"A", "B", "K", "L"}));
    EXPECT_TRUE(out.un.empty());
    EXPECT_EQ(out.spouses, vars(dag, {"C", "D"}));
    EXPECT_EQ(out.stats.mbs_learned, 1u);
    EXPECT_EQ(out.stats.termination, Termination::Resolved);
    EXPECT_EQ(out.stats.ci_tests, e.test_count());
}

TEST(Elcs, AblationSameOutcomeOnTrace) {
    const auto dag = trace_dag();
    auto with_n = oracle_for(dag);
    auto without_n = oracle_for(dag);
    const auto a = elcs::elcs(with_n, dag.index("T"));
    const auto b = elcs::elcs(without_n, dag.index("T"), {false, false});
    EXPECT_EQ(a.p, b.p);
    EXPECT_EQ(a.c, b.c);
    EXPECT_EQ(a.un, b.un);
    EXPECT_LT(a.stats.ci_tests, b.stats.ci_tests);
    EXPECT_GT(b.stats.mbs_learned, 1u);
}

TEST(Elcs, ChainStaysUndirected) {
    const auto dag = make_dag({"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}, {"C", "D"}});
    auto e = oracle_for(dag);
    const auto out = elcs::elcs(e, 2);
    EXPECT_EQ(out.un, (VarSet{1, 3}));
    EXPECT_TRUE(out.stats.termination == Termination::QueueExhausted ||
                out.stats.termination == Termination::AllVisited);
}

TEST(Elcs, OracleOrientationsAgreeWithTruth) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 80; ++trial) {
        const auto dag = random_dag(rng, 2 + rng() % 9, 0.3);
        for (Var t = 0; t < static_cast<Var>(dag.size()); ++t) {
            for (bool n_rule : {true, false}) {
                auto e = oracle_for(dag);
                const auto out = elcs::elcs(e, t, {false, n_rule});
                EXPECT_EQ(vs::unite(vs::unite(out.p, out.c), out.un), true_mb(dag, t).pc);
                for (const auto& [pair, m] : out.graph.marks())
                    if (m.kind == MarkKind::Directed)
                        ASSERT_TRUE(dag.has_edge(m.from, m.to)) << "trial " << trial << " t=" << t;
                EXPECT_TRUE(out.graph.conflicts().empty());
            }
        }
    }
}

TEST(Elcs, TerminationNames) {
    EXPECT_EQ(to_string(Termination::Resolved), "resolved");
    EXPECT_EQ(to_string(Termination::QueueExhausted), "queue-exhausted");
    EXPECT_EQ(to_string(Termination::AllVisited), "all-visited");
    EXPECT_EQ(to_string(Termination::SingleMb), "single-mb");
}
