#pragma once

#include <string>
#include <vector>

#include "elcs/local_graph.hpp"

namespace elcs {

enum class Termination { Resolved, QueueExhausted, AllVisited, SingleMb };

std::string to_string(Termination t);

struct ElcsStats {
    std::uint64_t ci_tests = 0;
    double time_ms = 0.0;
    std::size_t mbs_learned = 0;
    Termination termination = Termination::QueueExhausted;
};

struct ElcsOutcome {
    Var target = -1;
    VarSet p;
    VarSet c;
    VarSet un;
    VarSet spouses;             // from the target's own MB
    std::vector<Var> visit_order;
    LocalGraph graph;
    ElcsStats stats;
};

/// Local causal structure around `t`.
///
/// Starting from t, learns Markov blankets breadth-first (FIFO queue, each
/// variable visited at most once), records each result in a LocalGraph,
/// enqueues the undistinguished PC members and closes the graph under the
/// Meek rules. Stops when all of t's PC members are oriented, the queue
/// runs dry, or every variable has been visited. The target's p/c/un are
/// read from the graph, so orientations propagated from other blankets
/// count.
ElcsOutcome elcs(CiEngine& engine, Var t, const EmbOptions& options = {});

}  // namespace elcs
