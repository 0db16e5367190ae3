#pragma once

#include <map>

#include "elcs/pc_discovery.hpp"

namespace elcs {

/// Map from a PC member to a set of variables; absent keys read as empty.
using SpouseMap = std::map<Var, VarSet>;

const VarSet& lookup(const SpouseMap& m, Var key);

/// Output of one EMB run for a target.
struct MbResult {
    Var target = -1;
    VarSet pc;       // after false-positive removal
    SpouseMap sp;    // confirmed spouses keyed by the shared child
    SpouseMap csp;   // candidate spouses keyed by PC member
    Sepsets sep;
    VarSet p;        // identified parents
    VarSet c;        // identified children
    VarSet un;       // undistinguished
    VarSet mb;       // pc plus all confirmed spouses

    VarSet spouses() const;
    /// Throws InvariantError when p/c/un do not partition pc or the spouse
    /// maps are inconsistent with pc.
    void validate() const;
};

struct EmbOptions {
    /// EMB-II: when pruning a spouse set, search conditioning sets with the
    /// members most associated with the shared child first.
    bool rank_spouses = false;
    /// Use the N-structure rule when orienting children.
    bool n_structures = true;
};

struct SpouseSearch {
    SpouseMap sp;
    SpouseMap csp;
};

/// Candidate spouses per PC member, then pruning of non-parents of that
/// member from each spouse set.
SpouseSearch recog_spouses(CiEngine& engine, Var t, const VarSet& pc, const Sepsets& sep, bool rank_spouses = false);

struct PrunedPc {
    VarSet pc;
    SpouseMap sp;
    Sepsets sep;  // witness set for each dropped member
};

/// Drops Y from pc when some subset of sp{Y} and the input pc separates it
/// from t. Members are visited in ascending order; conditioning sets may
/// still use members dropped earlier. With `spouse_in_z`, only subsets meeting sp{Y} \ pc are tried; that
/// is exact when pc came from recog_pc, which already tested every subset
/// of pc.
PrunedPc remove_false_pc(CiEngine& engine, Var t, const VarSet& pc, SpouseMap sp, bool spouse_in_z = false);

/// Members dropped from pc may still be spouses of t (a descendant of one
/// child that is also a parent of another). Runs the candidate test for
/// each of them against the pruned pc, using its removal witness as the
/// separating set, and prunes the new entries like recog_spouses does.
void recover_spouses(CiEngine& engine, Var t, const VarSet& dropped, const Sepsets& sep, bool rank_spouses,
                     const VarSet& pc, SpouseMap& csp, SpouseMap& sp);

struct PcPartition {
    VarSet p;
    VarSet c;
    VarSet un;
};

/// Splits pc into parents, children and undistinguished members using
/// spouses (v-structures), the N-structure rule and the two marginal /
/// conditional dependence rules on pairs of PC members.
PcPartition distinguish_pc(CiEngine& engine, Var t, const VarSet& pc, const SpouseMap& sp, const SpouseMap& csp,
                           bool n_structures = true);

/// The four-step Markov blanket subroutine, with dropped pc members
/// re-examined as spouses between steps three and four.
MbResult emb(CiEngine& engine, Var t, const EmbOptions& options = {});

/// IAMB grow/shrink Markov blanket baseline.
VarSet iamb(CiEngine& engine, Var t);

}  // namespace elcs
