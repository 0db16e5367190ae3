#pragma once

#include <cstdint>
#include <span>

#include "elcs/dag.hpp"

namespace elcs {

/// Accuracy of one learned local structure against the true DAG.
struct LocalScore {
    double arr_p = 0.0;  // correctly oriented / output size
    double arr_r = 0.0;  // correctly oriented / true PC size
    double fdr = 0.0;    // output members not in the true PC / output size
    int shd = 0;         // undirected + reversed + missing + extra
    std::uint64_t ci_tests = 0;
    double time_ms = 0.0;
};

/// Throws std::invalid_argument when p, c, un overlap.
///
/// Empty conventions: with no output, arr_p is 1 if t has no true PC and 0
/// otherwise, and fdr is 0; with an empty true PC, arr_r is 1.
LocalScore score_local(const VarSet& p, const VarSet& c, const VarSet& un, const Dag& truth, Var t);

/// Per-field values, with shd and ci_tests widened to reals so they can be
/// averaged.
struct ScoreFields {
    double arr_p = 0.0;
    double arr_r = 0.0;
    double shd = 0.0;
    double fdr = 0.0;
    double ci_tests = 0.0;
    double time_ms = 0.0;
};

ScoreFields fields_of(const LocalScore& s);

struct ScoreAggregate {
    ScoreFields mean;
    ScoreFields std;  // population standard deviation
};

/// Throws std::invalid_argument on empty input.
ScoreAggregate aggregate(std::span<const ScoreFields> scores);
ScoreAggregate aggregate(std::span<const LocalScore> scores);

}  // namespace elcs
