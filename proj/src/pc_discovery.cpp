#include "elcs/pc_discovery.hpp"

#include <algorithm>
#include <limits>

namespace elcs {

namespace {

std::size_t budget(const CiEngine& engine) {
    return engine.options().max_cond_size.value_or(std::numeric_limits<std::size_t>::max());
}

}  // namespace

std::optional<VarSet> find_sepset(CiEngine& engine, Var x, Var y, const VarSet& pool) {
    std::optional<VarSet> found;
    vs::any_subset(pool, 0, budget(engine), [&](const VarSet& z) {
        if (!engine.independent(x, y, z)) return false;
        found = z;
        return true;
    });
    return found;
}

PcResult recog_pc(CiEngine& engine, Var t) {
    PcResult out;
    const auto n = static_cast<Var>(engine.var_count());

    struct Candidate {
        double strength;
        Var var;
    };
    std::vector<Candidate> candidates;
    for (Var x = 0; x < n; ++x) {
        if (x == t) continue;
        const auto r = engine.test(t, x, {});
        if (r.independent) {
            out.sep[x] = {};
        } else {
            candidates.push_back({engine.is_oracle() ? 1.0 : r.statistic, x});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.strength > b.strength; });

    const std::size_t cap = budget(engine);
    std::vector<Var> members;  // admission order
    for (const auto& cand : candidates) {
        const Var fresh = cand.var;
        members.push_back(fresh);
        // The newcomer first: when it is dropped, nothing else needs a retest.
        std::vector<Var> snapshot{fresh};
        snapshot.insert(snapshot.end(), members.begin(), members.end() - 1);
        for (Var y : snapshot) {
            if (y != fresh && std::find(members.begin(), members.end(), fresh) == members.end()) break;
            if (std::find(members.begin(), members.end(), y) == members.end()) continue;
            VarSet others;
            for (Var m : members)
                if (m != y) others.push_back(m);
            others = vs::normalize(std::move(others));

            std::optional<VarSet> sep;
            if (y == fresh) {
                sep = find_sepset(engine, t, y, others);
            } else if (cap > 0) {
                // Subsets without `fresh` were all found dependent in
                // earlier rounds; only those containing it are new.
                const VarSet rest = vs::without(others, fresh);
                vs::any_subset(rest, 0, cap - 1, [&](const VarSet& z) {
                    const VarSet cond = vs::with(z, fresh);
                    if (!engine.independent(t, y, cond)) return false;
                    sep = cond;
                    return true;
                });
            }
            if (sep) {
                members.erase(std::find(members.begin(), members.end(), y));
                out.sep[y] = *sep;
            }
        }
    }
    out.pc = vs::normalize(members);
    for (Var m : out.pc) out.sep.erase(m);
    return out;
}

}  // namespace elcs
