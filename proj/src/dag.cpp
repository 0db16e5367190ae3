#include "elcs/dag.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace elcs {

std::vector<Var> topo_order(const std::vector<VarSet>& parents) {
    const std::size_t n = parents.size();
    std::vector<std::size_t> indegree(n);
    std::vector<VarSet> children(n);
    for (std::size_t v = 0; v < n; ++v) {
        indegree[v] = parents[v].size();
        for (Var p : parents[v]) children[static_cast<std::size_t>(p)].push_back(static_cast<Var>(v));
    }
    std::priority_queue<Var, std::vector<Var>, std::greater<>> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.push(static_cast<Var>(v));
    std::vector<Var> order;
    order.reserve(n);
    while (!ready.empty()) {
        const Var v = ready.top();
        ready.pop();
        order.push_back(v);
        for (Var c : children[static_cast<std::size_t>(v)])
            if (--indegree[static_cast<std::size_t>(c)] == 0) ready.push(c);
    }
    if (order.size() == n) return order;

    // Every leftover vertex has a leftover parent; walk parents until a
    // vertex repeats.
    std::vector<char> done(n, 0);
    for (Var v : order) done[static_cast<std::size_t>(v)] = 1;
    Var start = 0;
    while (done[static_cast<std::size_t>(start)]) ++start;
    std::vector<int> pos(n, -1);
    std::vector<Var> walk;
    Var v = start;
    while (pos[static_cast<std::size_t>(v)] < 0) {
        pos[static_cast<std::size_t>(v)] = static_cast<int>(walk.size());
        walk.push_back(v);
        for (Var p : parents[static_cast<std::size_t>(v)])
            if (!done[static_cast<std::size_t>(p)]) {
                v = p;
                break;
            }
    }
    std::vector<Var> cycle(walk.begin() + pos[static_cast<std::size_t>(v)], walk.end());
    std::reverse(cycle.begin(), cycle.end());  // parent -> child direction
    throw CycleError("graph contains a directed cycle", std::move(cycle));
}

Dag::Dag(std::vector<std::string> names, std::vector<VarSet> parents)
    : names_(std::move(names)), parents_(std::move(parents)) {
    const auto n = names_.size();
    if (parents_.size() != n) throw DataError("dag: parent list size differs from variable count");
    children_.assign(n, {});
    for (std::size_t v = 0; v < n; ++v) {
        parents_[v] = vs::normalize(parents_[v]);
        for (Var p : parents_[v]) {
            if (p < 0 || static_cast<std::size_t>(p) >= n)
                throw DataError("dag: parent index " + std::to_string(p) + " out of range");
            if (static_cast<std::size_t>(p) == v) throw DataError("dag: self-loop on '" + names_[v] + "'");
            children_[static_cast<std::size_t>(p)].push_back(static_cast<Var>(v));
        }
    }
    for (auto& c : children_) c = vs::normalize(c);
    topo_ = elcs::topo_order(parents_);
}

Dag Dag::from_edges(std::vector<std::string> names, const std::vector<std::pair<Var, Var>>& edges) {
    std::vector<VarSet> parents(names.size());
    for (auto [from, to] : edges) {
        if (to < 0 || static_cast<std::size_t>(to) >= names.size())
            throw DataError("dag: edge endpoint " + std::to_string(to) + " out of range");
        parents[static_cast<std::size_t>(to)].push_back(from);
    }
    return Dag(std::move(names), std::move(parents));
}

Var Dag::index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw std::out_of_range("dag: unknown variable '" + name + "'");
    return static_cast<Var>(it - names_.begin());
}

std::size_t Dag::edge_count() const {
    std::size_t e = 0;
    for (const auto& p : parents_) e += p.size();
    return e;
}

bool d_separated(const Dag& dag, Var x, Var y, const VarSet& z) {
    const auto n = static_cast<Var>(dag.size());
    auto check = [n](Var v) {
        if (v < 0 || v >= n) throw std::out_of_range("d_separated: variable index " + std::to_string(v));
    };
    check(x);
    check(y);
    for (Var w : z) check(w);
    if (x == y) throw std::invalid_argument("d_separated: x == y");
    if (vs::contains(z, x) || vs::contains(z, y)) throw std::invalid_argument("d_separated: x or y in z");

    const auto un = static_cast<std::size_t>(n);
    std::vector<char> in_z(un, 0);
    for (Var w : z) in_z[static_cast<std::size_t>(w)] = 1;

    // Vertices that are in z or have a descendant in z.
    std::vector<char> opens_collider(un, 0);
    std::vector<Var> stack(z.begin(), z.end());
    while (!stack.empty()) {
        const Var v = stack.back();
        stack.pop_back();
        if (opens_collider[static_cast<std::size_t>(v)]) continue;
        opens_collider[static_cast<std::size_t>(v)] = 1;
        for (Var p : dag.parents(v)) stack.push_back(p);
    }

    // State: (vertex, arrived_from_child). Arriving "from a child" means the
    // trail enters v against an edge direction (v is a tail there).
    std::vector<char> seen(2 * un, 0);
    std::vector<std::pair<Var, bool>> frontier{{x, true}};
    while (!frontier.empty()) {
        const auto [v, from_child] = frontier.back();
        frontier.pop_back();
        const auto key = 2 * static_cast<std::size_t>(v) + (from_child ? 1 : 0);
        if (seen[key]) continue;
        seen[key] = 1;
        if (v == y) return false;
        const bool blocked_here = in_z[static_cast<std::size_t>(v)];
        if (from_child) {
            if (blocked_here) continue;
            for (Var p : dag.parents(v)) frontier.emplace_back(p, true);
            for (Var c : dag.children(v)) frontier.emplace_back(c, false);
        } else {
            if (!blocked_here)
                for (Var c : dag.children(v)) frontier.emplace_back(c, false);
            if (opens_collider[static_cast<std::size_t>(v)])
                for (Var p : dag.parents(v)) frontier.emplace_back(p, true);
        }
    }
    return true;
}

TrueBlanket true_mb(const Dag& dag, Var t) {
    TrueBlanket out;
    out.pc = vs::unite(dag.parents(t), dag.children(t));
    VarSet spouses;
    for (Var c : dag.children(t))
        for (Var p : dag.parents(c))
            if (p != t) spouses.push_back(p);
    out.spouses = vs::minus(vs::normalize(std::move(spouses)), out.pc);
    out.mb = vs::unite(out.pc, out.spouses);
    return out;
}

}  // namespace elcs
