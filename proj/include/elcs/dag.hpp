#pragma once

#include <string>
#include <utility>
#include <vector>

#include "elcs/types.hpp"

namespace elcs {

/// Thrown when a parent structure contains a directed cycle. `cycle` lists
/// one witness cycle v0 -> v1 -> ... -> v0 (first vertex not repeated).
struct CycleError : DataError {
    CycleError(const std::string& what, std::vector<Var> cycle) : DataError(what), cycle(std::move(cycle)) {}
    std::vector<Var> cycle;
};

/// Directed acyclic graph over named variables.
class Dag {
public:
    Dag() = default;

    /// Throws CycleError on a cycle, DataError on self-loops or bad indices.
    Dag(std::vector<std::string> names, std::vector<VarSet> parents);

    /// Convenience: build from (from, to) edges.
    static Dag from_edges(std::vector<std::string> names, const std::vector<std::pair<Var, Var>>& edges);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(Var v) const { return names_.at(static_cast<std::size_t>(v)); }
    /// Index of `name`; throws std::out_of_range when absent.
    Var index(const std::string& name) const;

    const VarSet& parents(Var v) const { return parents_.at(static_cast<std::size_t>(v)); }
    const VarSet& children(Var v) const { return children_.at(static_cast<std::size_t>(v)); }
    bool has_edge(Var from, Var to) const { return vs::contains(children(from), to); }
    bool adjacent(Var a, Var b) const { return has_edge(a, b) || has_edge(b, a); }
    std::size_t edge_count() const;

    /// Topological order; Kahn's algorithm taking the lowest ready index first.
    const std::vector<Var>& topo_order() const { return topo_; }

private:
    std::vector<std::string> names_;
    std::vector<VarSet> parents_;
    std::vector<VarSet> children_;
    std::vector<Var> topo_;
};

/// Kahn topological sort with lowest-index-first tie-breaking. Throws
/// CycleError carrying one cycle when `parents` is cyclic.
std::vector<Var> topo_order(const std::vector<VarSet>& parents);

/// True iff every path between x and y is blocked by z. Implemented as a
/// reachability sweep over (vertex, direction) states.
bool d_separated(const Dag& dag, Var x, Var y, const VarSet& z);

struct TrueBlanket {
    VarSet pc;
    VarSet spouses;
    VarSet mb;
};

/// Parents, children and spouses of t read off the graph.
TrueBlanket true_mb(const Dag& dag, Var t);

}  // namespace elcs
