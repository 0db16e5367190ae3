#include "elcs/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace elcs {

using nlohmann::json;

Algo parse_algo(const std::string& name) {
    if (name == "elcs") return Algo::Elcs;
    if (name == "elcs2") return Algo::Elcs2;
    if (name == "emb") return Algo::Emb;
    if (name == "iamb") return Algo::Iamb;
    throw UsageError("unknown algorithm '" + name + "' (expected elcs, elcs2, emb or iamb)");
}

std::string to_string(Algo algo) {
    switch (algo) {
        case Algo::Elcs: return "elcs";
        case Algo::Elcs2: return "elcs2";
        case Algo::Emb: return "emb";
        case Algo::Iamb: return "iamb";
    }
    return "unknown";
}

LearnResult learn(std::shared_ptr<const Dataset> data, Var target, const RunConfig& config) {
    auto engine = CiEngine::g2(std::move(data), config.ci);
    EmbOptions options;
    options.rank_spouses = config.algo == Algo::Elcs2;
    options.n_structures = !config.no_n_structures;

    LearnResult r;
    r.target = target;
    const auto start = std::chrono::steady_clock::now();
    switch (config.algo) {
        case Algo::Elcs:
        case Algo::Elcs2: {
            auto out = elcs(engine, target, options);
            r.parents = std::move(out.p);
            r.children = std::move(out.c);
            r.undirected = std::move(out.un);
            r.spouses = std::move(out.spouses);
            r.termination = to_string(out.stats.termination);
            break;
        }
        case Algo::Emb: {
            auto mb = emb(engine, target, options);
            r.parents = std::move(mb.p);
            r.children = std::move(mb.c);
            r.undirected = std::move(mb.un);
            r.spouses = mb.spouses();
            r.termination = to_string(Termination::SingleMb);
            break;
        }
        case Algo::Iamb:
            r.undirected = iamb(engine, target);
            r.termination = to_string(Termination::SingleMb);
            break;
    }
    r.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.ci_tests = engine.test_count();
    r.unreliable_tests = engine.unreliable_count();
    return r;
}

namespace {

json names_of(const VarSet& s, const std::vector<std::string>& names) {
    json a = json::array();
    for (Var v : s) a.push_back(names.at(static_cast<std::size_t>(v)));
    return a;
}

json fields_json(const ScoreFields& f) {
    return json{{"arr_p", f.arr_p}, {"arr_r", f.arr_r}, {"shd", f.shd},
                {"fdr", f.fdr},     {"ci_tests", f.ci_tests}, {"time_ms", f.time_ms}};
}

json aggregate_json(const ScoreAggregate& a) { return json{{"mean", fields_json(a.mean)}, {"std", fields_json(a.std)}}; }

std::vector<Var> resolve_targets(const Dag& dag, const std::vector<std::string>& wanted) {
    std::vector<Var> out;
    if (wanted.empty()) {
        for (std::size_t v = 0; v < dag.size(); ++v) out.push_back(static_cast<Var>(v));
        return out;
    }
    for (const auto& name : wanted) {
        try {
            out.push_back(dag.index(name));
        } catch (const std::out_of_range&) {
            throw UsageError("unknown target '" + name + "'");
        }
    }
    return out;
}

// Learns every target, fanning out over worker threads. Results land in
// target order, so the output does not depend on scheduling.
std::vector<LearnResult> learn_all(const std::shared_ptr<const Dataset>& data, const std::vector<Var>& targets,
                                   const RunConfig& config) {
    std::vector<LearnResult> results(targets.size());
    unsigned jobs = config.jobs ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, targets.size())));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < targets.size(); i = next++) {
            try {
                results[i] = learn(data, targets[i], config);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace

json to_json(const LearnResult& r, const std::vector<std::string>& names) {
    return json{{"schema", kReportSchema},
                {"target", names.at(static_cast<std::size_t>(r.target))},
                {"parents", names_of(r.parents, names)},
                {"children", names_of(r.children, names)},
                {"undirected", names_of(r.undirected, names)},
                {"spouses", names_of(r.spouses, names)},
                {"ci_tests", r.ci_tests},
                {"unreliable_tests", r.unreliable_tests},
                {"time_ms", r.time_ms},
                {"termination", r.termination}};
}

json run_benchmark(const CptNetwork& net, const std::string& network_name, const std::vector<std::size_t>& sizes,
                   std::size_t runs, const RunConfig& config) {
    if (sizes.empty()) throw UsageError("benchmark: no sample sizes");
    if (runs == 0) throw UsageError("benchmark: runs must be positive");
    const auto targets = resolve_targets(net.dag(), config.targets);
    const auto& names = net.dag().names();

    json report;
    report["schema"] = kReportSchema;
    report["kind"] = "benchmark";
    report["network"] = network_name;
    report["variables"] = net.size();
    report["edges"] = net.dag().edge_count();
    report["algo"] = to_string(config.algo);
    report["config"] = json{{"alpha", config.ci.alpha},
                            {"reliability_k", config.ci.reliability_k},
                            {"max_cond", config.ci.max_cond_size ? json(*config.ci.max_cond_size) : json(nullptr)},
                            {"no_n_structures", config.no_n_structures},
                            {"seed", config.seed},
                            {"runs", runs},
                            {"targets", config.targets.empty() ? json("all") : json(config.targets)}};
    report["blocks"] = json::array();

    for (std::size_t size : sizes) {
        if (size == 0) throw UsageError("benchmark: sample size must be positive");
        json block{{"size", size}, {"runs", json::array()}};
        std::vector<ScoreFields> run_means;
        for (std::size_t i = 0; i < runs; ++i) {
            const std::uint64_t seed = config.seed + i;
            auto data = std::make_shared<const Dataset>(sample(net, size, seed));
            const auto results = learn_all(data, targets, config);

            std::vector<LocalScore> scores;
            json per_target = json::array();
            std::uint64_t total_tests = 0;
            for (const auto& r : results) {
                LocalScore s = score_local(r.parents, r.children, r.undirected, net.dag(), r.target);
                s.ci_tests = r.ci_tests;
                s.time_ms = r.time_ms;
                total_tests += r.ci_tests;
                scores.push_back(s);
                json entry = to_json(r, names);
                entry.erase("schema");
                entry["score"] = fields_json(fields_of(s));
                per_target.push_back(std::move(entry));
            }
            const auto over_targets = aggregate(std::span<const LocalScore>(scores));
            run_means.push_back(over_targets.mean);
            block["runs"].push_back(json{{"run", i},
                                         {"seed", seed},
                                         {"total_ci_tests", total_tests},
                                         {"over_targets", aggregate_json(over_targets)},
                                         {"targets", std::move(per_target)}});
        }
        block["aggregate"] = aggregate_json(aggregate(std::span<const ScoreFields>(run_means)));
        report["blocks"].push_back(std::move(block));
    }
    return report;
}

std::string render_table(const json& report) {
    std::ostringstream out;
    out << report.value("network", std::string("?")) << " / " << report.value("algo", std::string("?")) << "\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-8s %-14s %-14s %-14s %-14s %-18s %-16s\n", "size", "ArrP", "ArrR", "SHD", "FDR",
                  "CI tests", "time (ms)");
    out << line;
    for (const auto& block : report.at("blocks")) {
        const auto& mean = block.at("aggregate").at("mean");
        const auto& sd = block.at("aggregate").at("std");
        auto cell = [&](const char* key, const char* fmt) {
            char buf[64];
            std::snprintf(buf, sizeof buf, fmt, mean.at(key).get<double>(), sd.at(key).get<double>());
            return std::string(buf);
        };
        std::snprintf(line, sizeof line, "%-8zu %-14s %-14s %-14s %-14s %-18s %-16s\n", block.at("size").get<std::size_t>(),
                      cell("arr_p", "%.2f+-%.2f").c_str(), cell("arr_r", "%.2f+-%.2f").c_str(),
                      cell("shd", "%.2f+-%.2f").c_str(), cell("fdr", "%.2f+-%.2f").c_str(),
                      cell("ci_tests", "%.0f+-%.0f").c_str(), cell("time_ms", "%.1f+-%.1f").c_str());
        out << line;
    }
    return out.str();
}

json strip_timing(json report) {
    if (report.is_object()) {
        report.erase("time_ms");
        for (auto& [key, value] : report.items()) value = strip_timing(value);
    } else if (report.is_array()) {
        for (auto& value : report) value = strip_timing(value);
    }
    return report;
}

}  // namespace elcs
