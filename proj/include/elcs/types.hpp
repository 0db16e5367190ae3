#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace elcs {

/// Index of a variable in a Dataset or Dag.
using Var = int;

/// Sorted, duplicate-free set of variables.
using VarSet = std::vector<Var>;

// Error hierarchy. The CLI maps DataError to exit code 2, UsageError to 1,
// InvariantError to 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : Error {
    using Error::Error;
};

/// Malformed input file (CSV, card sidecar, BIF).
struct DataError : Error {
    using Error::Error;
};

struct InvariantError : Error {
    using Error::Error;
};

/// A CI query whose conditioning set exceeds the engine's max_cond_size.
struct BudgetError : Error {
    using Error::Error;
};

namespace vs {

inline bool contains(const VarSet& s, Var v) { return std::binary_search(s.begin(), s.end(), v); }

inline void insert(VarSet& s, Var v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v) s.insert(it, v);
}

inline void erase(VarSet& s, Var v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it != s.end() && *it == v) s.erase(it);
}

inline VarSet unite(const VarSet& a, const VarSet& b) {
    VarSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VarSet minus(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VarSet intersect(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VarSet without(VarSet s, Var v) {
    erase(s, v);
    return s;
}

inline VarSet with(VarSet s, Var v) {
    insert(s, v);
    return s;
}

/// Sorts and deduplicates an arbitrary list into a VarSet.
inline VarSet normalize(std::vector<Var> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/// Visits subsets of `pool` by increasing cardinality, lexicographic (by
/// position in pool) within a cardinality, for sizes in [min_size, max_size].
/// Stops and returns true as soon as `visit` returns true.
template <typename Visit>
bool any_subset(const std::vector<Var>& pool, std::size_t min_size, std::size_t max_size, Visit&& visit) {
    const std::size_t n = pool.size();
    max_size = std::min(max_size, n);
    std::vector<std::size_t> idx;
    VarSet subset;
    for (std::size_t k = min_size; k <= max_size; ++k) {
        idx.resize(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            subset.clear();
            for (std::size_t i : idx) subset.push_back(pool[i]);
            std::sort(subset.begin(), subset.end());
            if (visit(static_cast<const VarSet&>(subset))) return true;
            // next combination
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return false;
}

}  // namespace vs
}  // namespace elcs
