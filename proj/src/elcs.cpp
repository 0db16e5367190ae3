#include "elcs/elcs.hpp"

#include <chrono>
#include <deque>

namespace elcs {

std::string to_string(Termination t) {
    switch (t) {
        case Termination::Resolved: return "resolved";
        case Termination::QueueExhausted: return "queue-exhausted";
        case Termination::AllVisited: return "all-visited";
        case Termination::SingleMb: return "single-mb";
    }
    return "unknown";
}

namespace {

void classify(const LocalGraph& graph, Var t, const VarSet& pc, ElcsOutcome& out) {
    out.p.clear();
    out.c.clear();
    out.un.clear();
    for (Var y : pc) {
        if (graph.directed(y, t))
            out.p.push_back(y);
        else if (graph.directed(t, y))
            out.c.push_back(y);
        else
            out.un.push_back(y);
    }
}

}  // namespace

ElcsOutcome elcs(CiEngine& engine, Var t, const EmbOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t tests_before = engine.test_count();
    const std::size_t n = engine.var_count();

    ElcsOutcome out;
    out.target = t;
    out.graph = LocalGraph(n);
    VarSet target_pc;
    std::deque<Var> queue{t};

    while (true) {
        const Var x = queue.front();
        queue.pop_front();
        if (!out.graph.visited(x)) {
            out.graph.visit(x);
            out.visit_order.push_back(x);
            const MbResult mb = emb(engine, x, options);
            ++out.stats.mbs_learned;
            if (x == t) {
                target_pc = mb.pc;
                out.spouses = mb.spouses();
            }
            apply_orientations(out.graph, mb);
            for (Var y : mb.un) queue.push_back(y);
        }
        out.graph = meek_closure(std::move(out.graph));
        classify(out.graph, t, target_pc, out);

        if (out.un.empty()) {
            out.stats.termination = Termination::Resolved;
            break;
        }
        if (queue.empty()) {
            out.stats.termination = Termination::QueueExhausted;
            break;
        }
        if (out.graph.visited_set().size() == n) {
            out.stats.termination = Termination::AllVisited;
            break;
        }
    }

    out.stats.ci_tests = engine.test_count() - tests_before;
    out.stats.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace elcs
