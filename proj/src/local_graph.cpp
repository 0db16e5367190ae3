#include "elcs/local_graph.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

namespace elcs {

LocalGraph::LocalGraph(std::size_t var_count) : adjacency_(var_count), visited_flags_(var_count, 0) {}

EdgeMark LocalGraph::mark(Var a, Var b) const {
    auto it = marks_.find(key(a, b));
    return it == marks_.end() ? EdgeMark{} : it->second;
}

void LocalGraph::link(Var a, Var b) {
    if (a == b) throw std::invalid_argument("LocalGraph: self-loop");
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= size() || static_cast<std::size_t>(b) >= size())
        throw std::out_of_range("LocalGraph: variable index out of range");
    vs::insert(adjacency_[static_cast<std::size_t>(a)], b);
    vs::insert(adjacency_[static_cast<std::size_t>(b)], a);
}

void LocalGraph::set_undirected(Var a, Var b) {
    link(a, b);
    marks_[key(a, b)] = EdgeMark{MarkKind::Undirected, -1, -1};
}

void LocalGraph::set_directed(Var from, Var to) {
    link(from, to);
    marks_[key(from, to)] = EdgeMark{MarkKind::Directed, from, to};
}

void LocalGraph::visit(Var v) {
    if (!visited_flags_.at(static_cast<std::size_t>(v))) {
        visited_flags_[static_cast<std::size_t>(v)] = 1;
        vs::insert(visited_, v);
    }
}

void apply_orientations(LocalGraph& graph, const MbResult& result) {
    const Var t = result.target;
    for (Var y : result.pc) {
        if (!graph.adjacent(t, y)) graph.set_undirected(t, y);
        std::optional<std::pair<Var, Var>> claim;
        if (vs::contains(result.p, y)) claim = std::pair{y, t};
        if (vs::contains(result.c, y)) claim = std::pair{t, y};
        if (!claim) continue;
        const auto m = graph.mark(t, y);
        if (m.kind == MarkKind::Undirected) {
            graph.set_directed(claim->first, claim->second);
        } else if (m.from != claim->first) {
            graph.record_conflict({m.from, m.to, t});
        }
    }
}

namespace {

class MeekPass {
public:
    explicit MeekPass(LocalGraph& g) : g_(g) {}

    bool known_absent(Var a, Var b) const { return !g_.adjacent(a, b) && (g_.visited(a) || g_.visited(b)); }

    // c -> a, a - b, c and b non-adjacent  =>  a -> b
    bool r1(Var a, Var b) const {
        for (Var c : g_.neighbors(a))
            if (c != b && g_.directed(c, a) && known_absent(c, b)) return true;
        return false;
    }

    // a -> c -> b, a - b  =>  a -> b
    bool r2(Var a, Var b) const {
        for (Var c : g_.neighbors(a))
            if (c != b && g_.directed(a, c) && g_.directed(c, b)) return true;
        return false;
    }

    // a - c, a - d, c -> b, d -> b, c and d non-adjacent  =>  a -> b
    bool r3(Var a, Var b) const {
        const auto& nb = g_.neighbors(a);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            const Var c = nb[i];
            if (c == b || !g_.undirected(a, c) || !g_.directed(c, b)) continue;
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                const Var d = nb[j];
                if (d == b || !g_.undirected(a, d) || !g_.directed(d, b)) continue;
                if (known_absent(c, d)) return true;
            }
        }
        return false;
    }

    // a - c, c -> d, d -> b, b and c non-adjacent  =>  a -> b
    bool r4(Var a, Var b) const {
        for (Var c : g_.neighbors(a)) {
            if (c == b || !g_.undirected(a, c) || !known_absent(b, c)) continue;
            for (Var d : g_.neighbors(c))
                if (d != a && d != b && g_.directed(c, d) && g_.directed(d, b)) return true;
        }
        return false;
    }

    bool fires(int rule, Var a, Var b) const {
        switch (rule) {
            case 0: return r1(a, b);
            case 1: return r2(a, b);
            case 2: return r3(a, b);
            default: return r4(a, b);
        }
    }

private:
    LocalGraph& g_;
};

}  // namespace

LocalGraph meek_closure(LocalGraph graph, std::optional<std::uint64_t> scan_seed) {
    std::optional<std::mt19937_64> rng;
    if (scan_seed) rng.emplace(*scan_seed);
    MeekPass pass(graph);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<Var, Var>> candidates;
        for (const auto& [pair, m] : graph.marks()) {
            if (m.kind != MarkKind::Undirected) continue;
            if (!graph.visited(pair.first) || !graph.visited(pair.second)) continue;
            candidates.emplace_back(pair.first, pair.second);
            candidates.emplace_back(pair.second, pair.first);
        }
        std::array<int, 4> rules{0, 1, 2, 3};
        if (rng) {
            std::shuffle(candidates.begin(), candidates.end(), *rng);
            std::shuffle(rules.begin(), rules.end(), *rng);
        }
        for (int rule : rules)
            for (auto [a, b] : candidates) {
                if (!graph.undirected(a, b)) continue;
                if (pass.fires(rule, a, b)) {
                    graph.set_directed(a, b);
                    changed = true;
                }
            }
    }
    return graph;
}

}  // namespace elcs
