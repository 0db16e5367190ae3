// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "elcs/elcs.hpp"
#include "elcs/local_graph.hpp"
#include "elcs/metrics.hpp"
#include "elcs/runner.hpp"
#include "elcs/stats.hpp"
#include "support.hpp"

using namespace elcs;
using namespace elcs::testing;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Verdict()>& check) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = check();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failures;
    std::printf("%s %s  %s  [%s] (%.1fs)\n", id, v.pass ? "PASS" : "FAIL", title, v.detail.c_str(), secs);
    std::fflush(stdout);
}

std::vector<Dag> random_suite() {
    std::mt19937_64 rng(2024);
    std::vector<Dag> out;
    for (int i = 0; i < 200; ++i) out.push_back(random_dag(rng, 2 + rng() % 9, 0.3));
    return out;
}

Verdict ac1_oracle_mb() {
    std::size_t checked = 0, wrong = 0;
    for (const auto& dag : random_suite())
        for (Var t = 0; t < static_cast<Var>(dag.size()); ++t) {
            auto e = oracle_for(dag);
            const auto r = emb(e, t);
            const auto truth = true_mb(dag, t);
            ++checked;
            if (r.mb != truth.mb || r.pc != truth.pc) ++wrong;
        }
    return {wrong == 0, std::to_string(checked) + " targets, " + std::to_string(wrong) + " mismatches"};
}

Verdict ac2_orientation() {
    std::size_t edges = 0, wrong = 0;
    for (const auto& dag : random_suite())
        for (Var t = 0; t < static_cast<Var>(dag.size()); ++t) {
            auto e = oracle_for(dag);
            const auto out = elcs::elcs(e, t);
            for (const auto& [pair, m] : out.graph.marks()) {
                if (m.kind != MarkKind::Directed) continue;
                ++edges;
                if (!dag.has_edge(m.from, m.to)) ++wrong;
            }
            for (Var p : out.p) wrong += !dag.has_edge(p, t);
            for (Var c : out.c) wrong += !dag.has_edge(t, c);
        }
    return {wrong == 0, std::to_string(edges) + " directed marks, " + std::to_string(wrong) + " wrong"};
}

Verdict ac3_trace() {
    const auto dag = trace_dag();
    auto e = oracle_for(dag);
    const auto r = emb(e, dag.index("T"));
    const bool ok = r.pc == vars(dag, {"A", "B", "L", "K", "E", "J"}) && r.spouses() == vars(dag, {"C", "D"}) &&
                    r.p == vars(dag, {"E", "J"}) && r.c == vars(dag, {"A", "B", "K", "L"}) && r.un.empty();
    auto names = [&](const VarSet& s) {
        std::string out = "{";
        for (Var v : s) out += (out.size() > 1 ? "," : "") + dag.name(v);
        return out + "}";
    };
    return {ok, "PC=" + names(r.pc) + " SP=" + names(r.spouses()) + " P=" + names(r.p) + " C=" + names(r.c) +
                    " UN=" + names(r.un)};
}

Verdict ac4_ablation() {
    const auto net = load_bif(fixture_path("trace_fixture.bif"));
    const Var t = net.dag().index("T");
    double with_n = 0, without_n = 0;
    RunConfig plain;
    plain.no_n_structures = true;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto data = std::make_shared<const Dataset>(sample(net, 5000, seed));
        with_n += static_cast<double>(learn(data, t, {}).ci_tests);
        without_n += static_cast<double>(learn(data, t, plain).ci_tests);
    }
    with_n /= 10;
    without_n /= 10;

    auto a = oracle_for(net.dag());
    auto b = oracle_for(net.dag());
    const auto oa = elcs::elcs(a, t);
    const auto ob = elcs::elcs(b, t, {false, false});
    const bool same = oa.p == ob.p && oa.c == ob.c && oa.un == ob.un;
    char buf[160];
    std::snprintf(buf, sizeof buf, "mean ci_tests %.1f (N rule) vs %.1f (without); oracle outcomes %s", with_n,
                  without_n, same ? "identical" : "differ");
    return {with_n <= without_n && same, buf};
}

Verdict ac5_alarm() {
    const auto net = load_bif(network_path("alarm.bif"));
    const auto report = run_benchmark(net, "alarm", {5000}, 10, {});
    const auto& mean = report.at("blocks")[0].at("aggregate").at("mean");
    const double p = mean.at("arr_p"), r = mean.at("arr_r"), shd = mean.at("shd"), fdr = mean.at("fdr");
    char buf[200];
    std::snprintf(buf, sizeof buf, "ArrP %.3f (>=0.75) ArrR %.3f (>=0.70) SHD %.3f (<=0.9) FDR %.3f (<=0.15)", p, r,
                  shd, fdr);
    return {p >= 0.75 && r >= 0.70 && shd <= 0.9 && fdr <= 0.15, buf};
}

// Direct evaluation of the closed-form sum, in long double.
long double g2_brute(const ContingencyTable& t) {
    long double g = 0;
    for (std::size_t k = 0; k < t.strata; ++k) {
        long double nk = 0;
        std::vector<long double> ni(static_cast<std::size_t>(t.rx), 0), nj(static_cast<std::size_t>(t.ry), 0);
        for (int i = 0; i < t.rx; ++i)
            for (int j = 0; j < t.ry; ++j) {
                const auto c = static_cast<long double>(t.at(k, i, j));
                ni[static_cast<std::size_t>(i)] += c;
                nj[static_cast<std::size_t>(j)] += c;
                nk += c;
            }
        for (int i = 0; i < t.rx; ++i)
            for (int j = 0; j < t.ry; ++j) {
                const auto c = static_cast<long double>(t.at(k, i, j));
                if (c > 0)
                    g += c * std::log(c * nk / (ni[static_cast<std::size_t>(i)] * nj[static_cast<std::size_t>(j)]));
            }
    }
    return 2 * g;
}

Verdict ac6_statistics() {
    std::mt19937_64 rng(6);
    double worst_g2 = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        ContingencyTable t;
        t.rx = 2 + static_cast<int>(rng() % 4);
        t.ry = 2 + static_cast<int>(rng() % 4);
        t.strata = 1 + rng() % 4;
        const auto scale = 1 + rng() % 200;
        for (std::size_t c = 0; c < t.strata * static_cast<std::size_t>(t.rx * t.ry); ++c) {
            const auto v = static_cast<std::int64_t>(rng() % 5 == 0 ? 0 : rng() % scale);
            t.counts.push_back(v);
            t.n += v;
        }
        const double got = g2_statistic(t).statistic;
        const double want = static_cast<double>(std::max<long double>(0, g2_brute(t)));
        worst_g2 = std::max(worst_g2, std::abs(got - want) / std::max(1.0, std::abs(want)));
    }

    boost::math::quadrature::exp_sinh<double> integrator;
    double worst_sf = 0;
    int points = 0;
    for (int dof : {1, 2, 3, 5, 10}) {
        for (double x : {0.05, 0.5, 1.0, 2.5, 4.0, 7.0, 12.0, 20.0, 35.0, 60.0}) {
            const double k = dof / 2.0;
            const double log_norm = -k * std::log(2.0) - std::lgamma(k);
            auto pdf = [&](double u) { return u <= 0 ? 0.0 : std::exp(log_norm + (k - 1) * std::log(u) - u / 2); };
            const double want = integrator.integrate([&](double s) { return pdf(x + s); }, 1e-14);
            worst_sf = std::max(worst_sf, std::abs(chi2_sf(x, dof) - want));
            ++points;
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "1000 tables, worst G2 rel err %.2e (<=1e-9); %d chi2 points, worst abs err %.2e (<=1e-8)",
                  worst_g2, points, worst_sf);
    return {worst_g2 <= 1e-9 && worst_sf <= 1e-8 && points == 50, buf};
}

Verdict ac7_meek() {
    std::mt19937_64 rng(7);
    int idempotent_fail = 0, order_fail = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng() % 8;
        const auto dag = random_dag(rng, n, 0.4);
        LocalGraph g(n);
        for (std::size_t v = 0; v < n; ++v) g.visit(static_cast<Var>(v));
        for (Var a = 0; a < static_cast<Var>(n); ++a)
            for (Var b : dag.children(a)) {
                bool collider = false;
                for (Var c : dag.parents(b)) collider |= c != a && !dag.adjacent(a, c);
                if (collider || rng() % 3 == 0)
                    g.set_directed(a, b);
                else
                    g.set_undirected(a, b);
            }
        const auto once = meek_closure(g);
        if (!(meek_closure(once) == once)) ++idempotent_fail;
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            if (!(meek_closure(g, seed) == once)) ++order_fail;
    }

    const auto dag = load_bif(fixture_path("collider_chain.bif")).dag();
    auto e = oracle_for(dag);
    const Var t = dag.index("T"), y = dag.index("Y");
    const auto out = elcs::elcs(e, t);
    const bool r1 = out.graph.directed(y, t) && out.p == VarSet{y} && out.un.empty();
    char buf[200];
    std::snprintf(buf, sizeof buf, "idempotence failures %d, scan-order failures %d; fixture Y->T %s", idempotent_fail,
                  order_fail, r1 ? "resolved" : "unresolved");
    return {idempotent_fail == 0 && order_fail == 0 && r1, buf};
}

Verdict ac8_metrics() {
    const auto dag = trace_dag();
    const Var t = dag.index("T");
    auto of = [&](std::initializer_list<const char*> n) { return vars(dag, n); };
    const auto a = score_local(of({"E", "J"}), of({"A", "B", "K", "L"}), {}, dag, t);
    const auto b = score_local(of({"E"}), of({"A", "B", "K"}), of({"J", "L"}), dag, t);
    const auto c = score_local(of({"E", "J"}), of({"A", "B", "K", "L", "D"}), {}, dag, t);
    const bool examples = a.arr_p == 1 && a.arr_r == 1 && a.shd == 0 && a.fdr == 0 && b.arr_p == 4.0 / 6 &&
                          b.arr_r == 4.0 / 6 && b.shd == 2 && b.fdr == 0 && c.arr_p == 6.0 / 7 && c.arr_r == 1 &&
                          c.shd == 1 && c.fdr == 1.0 / 7;

    std::mt19937_64 rng(8);
    const VarSet tp = of({"E", "J"}), tc = of({"A", "B", "K", "L"});
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        VarSet p, ch, un;
        for (Var v = 0; v < static_cast<Var>(dag.size()); ++v) {
            if (v == t) continue;
            const bool is_p = vs::contains(tp, v), is_c = vs::contains(tc, v);
            const auto roll = rng() % 12;
            if (is_p || is_c) {
                if (roll < 9) (is_p ? p : ch).push_back(v);
                else if (roll == 9) (is_p ? ch : p).push_back(v);
                else if (roll == 10) un.push_back(v);
            } else if (roll == 0) {
                (rng() % 2 ? ch : un).push_back(v);
            }
        }
        const auto s = score_local(p, ch, un, dag, t);
        const bool perfect = p == tp && ch == tc && un.empty();
        if ((s.shd == 0) != perfect) ++violations;
    }
    return {examples && violations == 0,
            std::string("hand examples ") + (examples ? "exact" : "differ") + ", shd=0 <=> perfect violations " +
                std::to_string(violations) + "/1000"};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict ac9_determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "elcs_acceptance";
    std::filesystem::create_directories(dir);
    std::string outputs[2];
    for (int i = 0; i < 2; ++i) {
        const auto out = dir / ("bench" + std::to_string(i) + ".json");
        const std::string cmd = std::string("\"") + ELCS_CLI + "\" benchmark \"" + network_path("alarm.bif") +
                                "\" --sizes 500,2000 --runs 3 --seed 11 --jobs 4 --out \"" + out.string() +
                                "\" > /dev/null";
        if (std::system(cmd.c_str()) != 0) return {false, "cli benchmark failed"};
        outputs[i] = read_file(out);
    }
    const auto a = strip_timing(nlohmann::json::parse(outputs[0]));
    const auto b = strip_timing(nlohmann::json::parse(outputs[1]));
    std::filesystem::remove_all(dir);
    return {a == b, std::string("two CLI runs ") + (a == b ? "identical" : "differ") + " apart from time_ms"};
}

}  // namespace

int main() {
    report("AC1", "oracle MB exactness", ac1_oracle_mb);
    report("AC2", "oracle orientation soundness", ac2_orientation);
    report("AC3", "trace reproduction", ac3_trace);
    report("AC4", "N-structure ablation", ac4_ablation);
    report("AC5", "Alarm accuracy 10x5000", ac5_alarm);
    report("AC6", "G2 and chi-square correctness", ac6_statistics);
    report("AC7", "Meek closure properties", ac7_meek);
    report("AC8", "metrics oracle", ac8_metrics);
    report("AC9", "benchmark determinism", ac9_determinism);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
