#include "elcs/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace elcs {

LocalScore score_local(const VarSet& p, const VarSet& c, const VarSet& un, const Dag& truth, Var t) {
    if (!vs::intersect(p, c).empty() || !vs::intersect(p, un).empty() || !vs::intersect(c, un).empty())
        throw std::invalid_argument("score_local: p, c, un overlap");
    const VarSet& tp = truth.parents(t);
    const VarSet& tc = truth.children(t);
    const VarSet tpc = vs::unite(tp, tc);
    const VarSet out = vs::unite(vs::unite(p, c), un);

    const auto correct = vs::intersect(p, tp).size() + vs::intersect(c, tc).size();
    const auto reversed = vs::intersect(p, tc).size() + vs::intersect(c, tp).size();
    const auto undirected = vs::intersect(un, tpc).size();
    const auto missing = vs::minus(tpc, out).size();
    const auto extra = vs::minus(out, tpc).size();

    LocalScore s;
    const auto o = static_cast<double>(out.size());
    s.arr_p = out.empty() ? (tpc.empty() ? 1.0 : 0.0) : static_cast<double>(correct) / o;
    s.arr_r = tpc.empty() ? 1.0 : static_cast<double>(correct) / static_cast<double>(tpc.size());
    s.fdr = out.empty() ? 0.0 : static_cast<double>(extra) / o;
    s.shd = static_cast<int>(undirected + reversed + missing + extra);
    return s;
}

ScoreFields fields_of(const LocalScore& s) {
    return {s.arr_p, s.arr_r, static_cast<double>(s.shd), s.fdr, static_cast<double>(s.ci_tests), s.time_ms};
}

ScoreAggregate aggregate(std::span<const ScoreFields> scores) {
    if (scores.empty()) throw std::invalid_argument("aggregate: no scores");
    constexpr double ScoreFields::*members[] = {&ScoreFields::arr_p, &ScoreFields::arr_r,   &ScoreFields::shd,
                                                &ScoreFields::fdr,   &ScoreFields::ci_tests, &ScoreFields::time_ms};
    ScoreAggregate out;
    const auto n = static_cast<double>(scores.size());
    for (auto m : members) {
        // offset by the first value so identical inputs give exactly zero spread
        const double base = scores.front().*m;
        double sum = 0.0;
        for (const auto& s : scores) sum += s.*m - base;
        const double mean = base + sum / n;
        double sq = 0.0;
        for (const auto& s : scores) sq += (s.*m - mean) * (s.*m - mean);
        out.mean.*m = mean;
        out.std.*m = std::sqrt(sq / n);
    }
    return out;
}

ScoreAggregate aggregate(std::span<const LocalScore> scores) {
    std::vector<ScoreFields> f;
    f.reserve(scores.size());
    for (const auto& s : scores) f.push_back(fields_of(s));
    return aggregate(std::span<const ScoreFields>(f));
}

}  // namespace elcs
