#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>

#include "elcs/dag.hpp"
#include "elcs/dataset.hpp"

namespace elcs {

struct CiResult {
    bool independent = false;
    double statistic = 0.0;
    double p_value = 0.0;
    int dof = 0;
    bool reliable = true;
};

struct CiOptions {
    double alpha = 0.01;
    /// A data test needs row_count >= reliability_k * dof; 0 disables the check.
    double reliability_k = 5.0;
    /// Largest admissible |z|; unset means unbounded.
    std::optional<std::size_t> max_cond_size;
};

/// Conditional-independence authority for one learning run.
///
/// Backed either by a G2 test on a Dataset or by d-separation in a known
/// DAG. Every test() or assoc() call increments test_count() by one. An
/// instance is not thread-safe; give each concurrent run its own engine
/// over the shared, immutable data.
class CiEngine {
public:
    static CiEngine g2(std::shared_ptr<const Dataset> data, CiOptions options = {});
    static CiEngine oracle(std::shared_ptr<const Dag> dag, CiOptions options = {});

    /// Throws std::invalid_argument / std::out_of_range on precondition
    /// violations and BudgetError when |z| exceeds max_cond_size. Rejected
    /// queries are not counted.
    CiResult test(Var x, Var y, const VarSet& z);

    bool independent(Var x, Var y, const VarSet& z) { return test(x, y, z).independent; }
    bool dependent(Var x, Var y, const VarSet& z) { return !test(x, y, z).independent; }

    /// Dependency strength: the G2 statistic, or 1/0 for the oracle.
    double assoc(Var x, Var y, const VarSet& z);

    /// Whether a conditioning set of this size is within budget.
    bool admits(std::size_t cond_size) const {
        return !options_.max_cond_size || cond_size <= *options_.max_cond_size;
    }

    std::size_t var_count() const;
    std::uint64_t test_count() const { return tests_; }
    /// Data tests that failed the sample-size rule and were forced dependent.
    std::uint64_t unreliable_count() const { return unreliable_; }
    const CiOptions& options() const { return options_; }
    bool is_oracle() const { return std::holds_alternative<std::shared_ptr<const Dag>>(backend_); }

private:
    using Backend = std::variant<std::shared_ptr<const Dataset>, std::shared_ptr<const Dag>>;
    CiEngine(Backend backend, CiOptions options);

    void validate(Var x, Var y, const VarSet& z) const;

    Backend backend_;
    CiOptions options_;
    std::uint64_t tests_ = 0;
    std::uint64_t unreliable_ = 0;
};

}  // namespace elcs
