#include "elcs/mb_discovery.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace elcs {

namespace {

const VarSet kEmpty;

std::size_t budget(const CiEngine& engine) {
    return engine.options().max_cond_size.value_or(std::numeric_limits<std::size_t>::max());
}

// Dependence check that treats an over-budget conditioning set as "no
// separation found".
bool dependent_within_budget(CiEngine& engine, Var x, Var y, const VarSet& z) {
    if (!engine.admits(z.size())) return true;
    return engine.dependent(x, y, z);
}

}  // namespace

const VarSet& lookup(const SpouseMap& m, Var key) {
    auto it = m.find(key);
    return it == m.end() ? kEmpty : it->second;
}

VarSet MbResult::spouses() const {
    VarSet out;
    for (const auto& [child, s] : sp) out = vs::unite(out, s);
    return out;
}

void MbResult::validate() const {
    auto fail = [](const std::string& msg) { throw InvariantError("MbResult: " + msg); };
    if (!vs::intersect(p, c).empty() || !vs::intersect(p, un).empty() || !vs::intersect(c, un).empty())
        fail("p, c, un overlap");
    if (vs::unite(vs::unite(p, c), un) != pc) fail("p, c, un do not cover pc");
    for (const auto& [child, s] : sp) {
        if (!vs::contains(pc, child)) fail("spouse key outside pc");
        if (!vs::intersect(s, pc).empty() || vs::contains(s, target)) fail("spouse set meets pc or target");
    }
    if (mb != vs::unite(pc, spouses())) fail("mb != pc + spouses");
}

namespace {

// Adds x to csp{Y} for every pc member Y that looks like a common child of x
// and t given x's separating set.
void collect_candidates(CiEngine& engine, Var t, const VarSet& pc, Var x, const VarSet& sep_x, SpouseMap& csp) {
    VarSet temp;
    for (Var y : pc)
        if (engine.dependent(x, y, {})) temp.push_back(y);
    // With an empty Temp the per-member loop below has nothing to do.
    if (temp.empty()) return;
    if (!dependent_within_budget(engine, x, t, temp)) return;
    for (Var y : temp)
        if (dependent_within_budget(engine, x, t, vs::with(sep_x, y))) vs::insert(csp[y], x);
}

// Removes from `spouses` (those of pc member y) every entry of `check` that
// some subset of the pc, t and the remaining spouses separates from y.
// Ranking puts the spouses most dependent on y first in the subset search.
void prune_spouses(CiEngine& engine, Var t, const VarSet& pc, Var y, VarSet& spouses, const VarSet& check,
                   bool rank) {
    std::vector<Var> ranked(spouses.begin(), spouses.end());
    if (rank) {
        std::vector<std::pair<double, Var>> strength;
        for (Var x : ranked) strength.emplace_back(engine.assoc(x, y, {}), x);
        std::stable_sort(strength.begin(), strength.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        ranked.clear();
        for (const auto& r : strength) ranked.push_back(r.second);
    }
    const std::size_t cap = budget(engine);
    for (Var x : check) {
        std::vector<Var> pool;
        if (rank) {
            for (Var s : ranked)
                if (s != x && vs::contains(spouses, s)) pool.push_back(s);
            for (Var v : vs::with(pc, t))
                if (v != x && v != y && !vs::contains(spouses, v)) pool.push_back(v);
        } else {
            pool = vs::unite(vs::with(pc, t), spouses);
            vs::erase(pool, x);
            vs::erase(pool, y);
        }
        const bool separated =
            vs::any_subset(pool, 0, cap, [&](const VarSet& z) { return engine.independent(x, y, z); });
        if (separated) vs::erase(spouses, x);
    }
}

}  // namespace

SpouseSearch recog_spouses(CiEngine& engine, Var t, const VarSet& pc, const Sepsets& sep, bool rank_spouses) {
    SpouseSearch out;
    const auto n = static_cast<Var>(engine.var_count());
    for (Var x = 0; x < n; ++x) {
        if (x == t || vs::contains(pc, x)) continue;
        auto it = sep.find(x);
        collect_candidates(engine, t, pc, x, it == sep.end() ? kEmpty : it->second, out.csp);
    }
    out.sp = out.csp;
    for (Var y : pc) {
        auto it = out.sp.find(y);
        if (it == out.sp.end()) continue;
        prune_spouses(engine, t, pc, y, it->second, VarSet(it->second), rank_spouses);
        if (it->second.empty()) out.sp.erase(it);
    }
    return out;
}

PrunedPc remove_false_pc(CiEngine& engine, Var t, const VarSet& pc, SpouseMap sp, bool spouse_in_z) {
    PrunedPc out{pc, std::move(sp), {}};
    const std::size_t cap = budget(engine);
    // Conditioning sets come from the input pc, not the shrinking one: a
    // false member can be needed to block paths into another false member.
    for (Var y : pc) {
        const VarSet& spouses = lookup(out.sp, y);
        const VarSet fresh = vs::minus(spouses, pc);
        if (spouse_in_z && fresh.empty()) continue;
        const VarSet pool = vs::without(vs::unite(spouses, pc), y);
        std::optional<VarSet> witness;
        vs::any_subset(pool, 0, cap, [&](const VarSet& z) {
            if (spouse_in_z && vs::intersect(z, fresh).empty()) return false;
            if (!engine.independent(t, y, z)) return false;
            witness = z;
            return true;
        });
        if (witness) {
            vs::erase(out.pc, y);
            out.sp.erase(y);
            out.sep[y] = std::move(*witness);
        }
    }
    return out;
}

void recover_spouses(CiEngine& engine, Var t, const VarSet& dropped, const Sepsets& sep, bool rank_spouses,
                     const VarSet& pc, SpouseMap& csp, SpouseMap& sp) {
    if (dropped.empty()) return;
    SpouseMap fresh;
    for (Var x : dropped) collect_candidates(engine, t, pc, x, lookup(sep, x), fresh);
    for (auto& [y, xs] : fresh) {
        for (Var x : xs) vs::insert(csp[y], x);
        VarSet& spouses = sp[y];
        spouses = vs::unite(spouses, xs);
        prune_spouses(engine, t, pc, y, spouses, xs, rank_spouses);
        if (spouses.empty()) sp.erase(y);
    }
}

PcPartition distinguish_pc(CiEngine& engine, Var t, const VarSet& pc, const SpouseMap& sp, const SpouseMap& csp,
                           bool n_structures) {
    PcPartition out;
    // A confirmed spouse means a v-structure t -> Y <- X.
    for (Var y : pc)
        if (!lookup(sp, y).empty()) vs::insert(out.c, y);

    // N-structure: a candidate spouse of X that is a confirmed spouse of t
    // stays dependent on t given X, which rules out X being a parent.
    if (n_structures) {
        VarSet confirmed;
        for (Var y : out.c) confirmed = vs::unite(confirmed, lookup(sp, y));
        VarSet added;
        for (Var x : vs::minus(pc, out.c))
            if (!vs::intersect(lookup(csp, x), confirmed).empty()) added.push_back(x);
        out.c = vs::unite(out.c, added);
    }

    // X _||_ Y | {} and X not_||_ Y | t  =>  X -> t <- Y.
    const VarSet rest = vs::minus(pc, out.c);
    const VarSet cond_t{t};
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (std::size_t j = i + 1; j < rest.size(); ++j) {
            const Var x = rest[i];
            const Var y = rest[j];
            if (engine.independent(x, y, {}) && engine.dependent(x, y, cond_t)) {
                vs::insert(out.p, x);
                vs::insert(out.p, y);
            }
        }

    // Y -> t, X not_||_ Y | {} and X _||_ Y | t  =>  t -> X.
    for (Var x : vs::minus(vs::minus(pc, out.p), out.c))
        for (Var y : out.p)
            if (engine.dependent(x, y, {}) && engine.independent(x, y, cond_t)) {
                vs::insert(out.c, x);
                break;
            }

    if (!vs::intersect(out.p, out.c).empty()) throw InvariantError("distinguish_pc: variable marked parent and child");
    out.un = vs::minus(vs::minus(pc, out.p), out.c);
    return out;
}

MbResult emb(CiEngine& engine, Var t, const EmbOptions& options) {
    MbResult r;
    r.target = t;
    auto found = recog_pc(engine, t);
    r.sep = std::move(found.sep);
    auto spouses = recog_spouses(engine, t, found.pc, r.sep, options.rank_spouses);
    r.csp = std::move(spouses.csp);
    auto pruned = remove_false_pc(engine, t, found.pc, std::move(spouses.sp), /*spouse_in_z=*/true);
    r.pc = std::move(pruned.pc);
    r.sp = std::move(pruned.sp);
    for (auto& [x, z] : pruned.sep) r.sep[x] = z;
    recover_spouses(engine, t, vs::minus(found.pc, r.pc), pruned.sep, options.rank_spouses, r.pc, r.csp, r.sp);
    auto parts = distinguish_pc(engine, t, r.pc, r.sp, r.csp, options.n_structures);
    r.p = std::move(parts.p);
    r.c = std::move(parts.c);
    r.un = std::move(parts.un);
    r.mb = vs::unite(r.pc, r.spouses());
    r.validate();
    return r;
}

VarSet iamb(CiEngine& engine, Var t) {
    const auto n = static_cast<Var>(engine.var_count());
    VarSet mb;
    while (engine.admits(mb.size())) {
        Var best = -1;
        double best_strength = -1.0;
        for (Var x = 0; x < n; ++x) {
            if (x == t || vs::contains(mb, x)) continue;
            const auto r = engine.test(t, x, mb);
            if (r.independent) continue;
            const double strength = engine.is_oracle() ? 1.0 : r.statistic;
            if (strength > best_strength) {
                best_strength = strength;
                best = x;
            }
        }
        if (best < 0) break;
        vs::insert(mb, best);
    }
    for (Var x : VarSet(mb)) {
        const VarSet rest = vs::without(mb, x);
        if (engine.admits(rest.size()) && engine.independent(t, x, rest)) vs::erase(mb, x);
    }
    return mb;
}

}  // namespace elcs
