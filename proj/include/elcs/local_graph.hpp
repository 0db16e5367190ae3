#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "elcs/mb_discovery.hpp"

namespace elcs {

enum class MarkKind { Absent, Undirected, Directed };

struct EdgeMark {
    MarkKind kind = MarkKind::Absent;
    Var from = -1;  // meaningful for Directed only
    Var to = -1;

    friend bool operator==(const EdgeMark&, const EdgeMark&) = default;
};

/// An orientation claim that disagreed with an existing directed mark.
struct OrientationConflict {
    Var existing_from;
    Var existing_to;
    Var source;  // variable whose MB produced the rejected claim
};

/// Partially directed edge set over the variables touched so far, plus the
/// set of variables whose Markov blanket has been learned.
class LocalGraph {
public:
    explicit LocalGraph(std::size_t var_count = 0);

    std::size_t size() const { return adjacency_.size(); }

    EdgeMark mark(Var a, Var b) const;
    bool adjacent(Var a, Var b) const { return mark(a, b).kind != MarkKind::Absent; }
    bool undirected(Var a, Var b) const { return mark(a, b).kind == MarkKind::Undirected; }
    bool directed(Var from, Var to) const {
        const auto m = mark(from, to);
        return m.kind == MarkKind::Directed && m.from == from;
    }
    const VarSet& neighbors(Var v) const { return adjacency_.at(static_cast<std::size_t>(v)); }

    void set_undirected(Var a, Var b);
    void set_directed(Var from, Var to);

    bool visited(Var v) const { return visited_flags_.at(static_cast<std::size_t>(v)) != 0; }
    void visit(Var v);
    const VarSet& visited_set() const { return visited_; }

    /// Every non-absent pair as (min, max) -> mark, in lexicographic order.
    const std::map<std::pair<Var, Var>, EdgeMark>& marks() const { return marks_; }

    const std::vector<OrientationConflict>& conflicts() const { return conflicts_; }
    void record_conflict(OrientationConflict c) { conflicts_.push_back(c); }

    /// Same marks and visited set (conflict logs are not compared).
    friend bool operator==(const LocalGraph& a, const LocalGraph& b) {
        return a.marks_ == b.marks_ && a.visited_ == b.visited_;
    }

private:
    static std::pair<Var, Var> key(Var a, Var b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }
    void link(Var a, Var b);

    std::map<std::pair<Var, Var>, EdgeMark> marks_;
    std::vector<VarSet> adjacency_;
    std::vector<char> visited_flags_;
    VarSet visited_;
    std::vector<OrientationConflict> conflicts_;
};

/// Adds an edge for every PC member of `result.target` and orients the
/// identified parents/children. Existing directed marks are never
/// overwritten; contradicting claims go to the conflict log.
void apply_orientations(LocalGraph& graph, const MbResult& result);

/// Applies Meek rules R1-R4 to a fixed point. Only edges whose endpoints
/// are both visited get oriented, and non-adjacency premises are only
/// trusted for pairs with a visited endpoint (otherwise the absence of a
/// mark means "unknown").
///
/// `scan_seed` permutes rule and pair order per pass; the default is rule
/// index, then lexicographic pairs.
LocalGraph meek_closure(LocalGraph graph, std::optional<std::uint64_t> scan_seed = std::nullopt);

}  // namespace elcs
