#include "elcs/citest.hpp"

#include <stdexcept>

#include "elcs/stats.hpp"

namespace elcs {

CiEngine::CiEngine(Backend backend, CiOptions options) : backend_(std::move(backend)), options_(options) {
    if (!(options_.alpha > 0.0 && options_.alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
    if (!(options_.reliability_k >= 0.0)) throw UsageError("reliability_k must be nonnegative");
}

CiEngine CiEngine::g2(std::shared_ptr<const Dataset> data, CiOptions options) {
    if (!data) throw std::invalid_argument("CiEngine::g2: null dataset");
    return CiEngine(std::move(data), options);
}

CiEngine CiEngine::oracle(std::shared_ptr<const Dag> dag, CiOptions options) {
    if (!dag) throw std::invalid_argument("CiEngine::oracle: null dag");
    return CiEngine(std::move(dag), options);
}

std::size_t CiEngine::var_count() const {
    return std::visit([](const auto& b) -> std::size_t {
        using T = std::decay_t<decltype(*b)>;
        if constexpr (std::is_same_v<T, Dataset>)
            return b->var_count();
        else
            return b->size();
    }, backend_);
}

void CiEngine::validate(Var x, Var y, const VarSet& z) const {
    const auto n = static_cast<Var>(var_count());
    auto check = [n](Var v) {
        if (v < 0 || v >= n) throw std::out_of_range("ci test: variable index " + std::to_string(v) + " out of range");
    };
    check(x);
    check(y);
    for (Var w : z) check(w);
    if (x == y) throw std::invalid_argument("ci test: x == y");
    for (std::size_t i = 1; i < z.size(); ++i)
        if (z[i - 1] >= z[i]) throw std::invalid_argument("ci test: conditioning set must be sorted and unique");
    if (vs::contains(z, x) || vs::contains(z, y)) throw std::invalid_argument("ci test: x or y in conditioning set");
    if (!admits(z.size()))
        throw BudgetError("ci test: |z| = " + std::to_string(z.size()) + " exceeds max_cond_size " +
                          std::to_string(*options_.max_cond_size));
}

CiResult CiEngine::test(Var x, Var y, const VarSet& z) {
    validate(x, y, z);
    ++tests_;
    CiResult r;
    if (const auto* dag = std::get_if<std::shared_ptr<const Dag>>(&backend_)) {
        r.independent = d_separated(**dag, x, y, z);
        r.p_value = r.independent ? 1.0 : 0.0;
        r.reliable = true;
        return r;
    }
    const auto& data = *std::get<std::shared_ptr<const Dataset>>(backend_);
    const auto g2 = g2_statistic(contingency(data, x, y, z));
    r.statistic = g2.statistic;
    r.dof = g2.dof;
    // No free cells left: no evidence against independence.
    r.p_value = g2.dof > 0 ? chi2_sf(g2.statistic, g2.dof) : 1.0;
    r.reliable = static_cast<double>(data.row_count()) >= options_.reliability_k * static_cast<double>(g2.dof);
    if (r.reliable) {
        r.independent = r.p_value > options_.alpha;
    } else {
        r.independent = false;
        ++unreliable_;
    }
    return r;
}

double CiEngine::assoc(Var x, Var y, const VarSet& z) {
    const auto r = test(x, y, z);
    if (is_oracle()) return r.independent ? 0.0 : 1.0;
    return r.statistic;
}

}  // namespace elcs
