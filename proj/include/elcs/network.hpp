#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "elcs/dag.hpp"
#include "elcs/dataset.hpp"

namespace elcs {

/// Conditional probability table for one variable.
///
/// `parents` keeps the declaration order of the source file. Parent
/// configurations are enumerated mixed-radix with the first parent most
/// significant; row `cfg` occupies probs[cfg * r, (cfg + 1) * r).
struct Cpt {
    std::vector<Var> parents;
    std::vector<double> probs;
};

/// A discrete Bayesian network: DAG, state labels and fully specified CPTs.
class CptNetwork {
public:
    CptNetwork() = default;

    /// Validates row sums (1 +- 1e-9 after normalization by the parser),
    /// table sizes and parent sets. Throws DataError.
    CptNetwork(Dag dag, std::vector<std::vector<std::string>> states, std::vector<Cpt> cpts);

    const Dag& dag() const { return dag_; }
    std::size_t size() const { return dag_.size(); }
    int cardinality(Var v) const { return static_cast<int>(states_.at(static_cast<std::size_t>(v)).size()); }
    std::vector<int> cardinalities() const;
    const std::vector<std::string>& states(Var v) const { return states_.at(static_cast<std::size_t>(v)); }
    const Cpt& cpt(Var v) const { return cpts_.at(static_cast<std::size_t>(v)); }

private:
    Dag dag_;
    std::vector<std::vector<std::string>> states_;
    std::vector<Cpt> cpts_;
};

/// Parses the discrete BIF subset: a `network` block, `variable` blocks of
/// `type discrete [ k ] { ... };` and `probability` blocks using `table` or
/// per-configuration `( v1, ... ) p, ...;` rows. Errors carry line:column.
CptNetwork parse_bif(std::string_view text);
CptNetwork load_bif(const std::filesystem::path& path);

/// Draws `n` rows by ancestral sampling. Row-major: for each row, one
/// uniform draw per variable in topological order. Deterministic in
/// (net, n, seed) on every platform.
Dataset sample(const CptNetwork& net, std::size_t n, std::uint64_t seed);

}  // namespace elcs
