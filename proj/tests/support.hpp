#pragma once

#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "elcs/citest.hpp"
#include "elcs/dag.hpp"
#include "elcs/network.hpp"

namespace elcs::testing {

inline std::string fixture_path(const std::string& file) { return std::string(ELCS_TEST_DATA) + "/" + file; }
inline std::string network_path(const std::string& file) { return std::string(ELCS_NETWORKS) + "/" + file; }

// Names in index order: A B C D E I J K L T.
inline Dag trace_dag() { return load_bif(fixture_path("trace_fixture.bif")).dag(); }

inline VarSet vars(const Dag& dag, std::initializer_list<const char*> names) {
    std::vector<Var> out;
    for (const char* n : names) out.push_back(dag.index(n));
    return vs::normalize(out);
}

inline CiEngine oracle_for(const Dag& dag, CiOptions options = {}) {
    return CiEngine::oracle(std::make_shared<const Dag>(dag), options);
}

inline Dag make_dag(std::vector<std::string> names, std::initializer_list<std::pair<const char*, const char*>> edges) {
    std::vector<std::pair<Var, Var>> idx;
    auto find = [&](const char* n) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == n) return static_cast<Var>(i);
        throw std::out_of_range(n);
    };
    for (auto [a, b] : edges) idx.emplace_back(find(a), find(b));
    return Dag::from_edges(std::move(names), idx);
}

/// Random DAG: a shuffled node order with each forward pair joined with
/// probability `p`.
inline Dag random_dag(std::mt19937_64& rng, std::size_t n, double p) {
    std::vector<Var> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Var>(i);
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution edge(p);
    std::vector<std::pair<Var, Var>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (edge(rng)) edges.emplace_back(order[i], order[j]);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));
    return Dag::from_edges(std::move(names), edges);
}

}  // namespace elcs::testing
