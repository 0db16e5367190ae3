#pragma once

#include <map>
#include <optional>

#include "elcs/citest.hpp"

namespace elcs {

/// Sep_T{x}: the conditioning set that rendered x independent of the target.
using Sepsets = std::map<Var, VarSet>;

struct PcResult {
    VarSet pc;
    Sepsets sep;
};

/// First subset Z of `pool` (cardinality-ascending, lexicographic, sizes
/// within the engine budget) with x independent of y given Z.
std::optional<VarSet> find_sepset(CiEngine& engine, Var x, Var y, const VarSet& pool);

/// Interleaved HITON-PC.
///
/// Variables dependent on t at order zero are admitted one at a time in
/// descending association (ties by index). After each admission every
/// member is dropped if some subset of the other members separates it from
/// t; the witnessing subset is recorded in `sep`. Variables independent at
/// order zero get an empty sepset.
PcResult recog_pc(CiEngine& engine, Var t);

}  // namespace elcs
