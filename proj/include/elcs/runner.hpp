#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "elcs/citest.hpp"
#include "elcs/elcs.hpp"
#include "elcs/metrics.hpp"
#include "elcs/network.hpp"

namespace elcs {

inline constexpr int kReportSchema = 1;

enum class Algo { Elcs, Elcs2, Emb, Iamb };

/// Throws UsageError for unknown names.
Algo parse_algo(const std::string& name);
std::string to_string(Algo algo);

struct RunConfig {
    Algo algo = Algo::Elcs;
    CiOptions ci;
    bool no_n_structures = false;
    std::uint64_t seed = 1;
    /// Target names; empty means every variable.
    std::vector<std::string> targets;
    /// Worker threads for benchmark fan-out; 0 picks the hardware count.
    unsigned jobs = 0;
};

/// Outcome of one learning call, independent of the algorithm used.
struct LearnResult {
    Var target = -1;
    VarSet parents;
    VarSet children;
    VarSet undirected;
    VarSet spouses;
    std::uint64_t ci_tests = 0;
    std::uint64_t unreliable_tests = 0;
    double time_ms = 0.0;
    std::string termination;
};

/// Runs the configured algorithm for `target` with a fresh engine. IAMB
/// reports its whole blanket as undirected.
LearnResult learn(std::shared_ptr<const Dataset> data, Var target, const RunConfig& config);

nlohmann::json to_json(const LearnResult& r, const std::vector<std::string>& names);

/// Samples `runs` datasets per size (seeds config.seed + i), learns every
/// target on each, scores against the network's DAG and aggregates.
nlohmann::json run_benchmark(const CptNetwork& net, const std::string& network_name,
                             const std::vector<std::size_t>& sizes, std::size_t runs, const RunConfig& config);

/// Human-readable mean +- std table derived from a benchmark report.
std::string render_table(const nlohmann::json& report);

/// Copy of `report` with every "time_ms" field removed, for comparisons.
nlohmann::json strip_timing(nlohmann::json report);

}  // namespace elcs
