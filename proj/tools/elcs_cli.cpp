#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elcs/dataset.hpp"
#include "elcs/network.hpp"
#include "elcs/runner.hpp"

namespace {

using nlohmann::json;

enum Exit { Ok = 0, Usage = 1, Data = 2, Internal = 3 };

struct ConfigFlags {
    std::string algo = "elcs";
    double alpha = 0.01;
    double reliability_k = 5.0;
    std::optional<std::size_t> max_cond;
    bool no_n_structures = false;
    std::uint64_t seed = 1;
    std::vector<std::string> targets;
    unsigned jobs = 0;

    void attach(CLI::App& cmd, bool many_targets) {
        cmd.add_option("--algo", algo, "elcs, elcs2, emb or iamb")->capture_default_str();
        cmd.add_option("--alpha", alpha, "CI test significance level")->capture_default_str();
        cmd.add_option("--reliability-k", reliability_k, "rows required per degree of freedom")->capture_default_str();
        cmd.add_option("--max-cond", max_cond, "cap on conditioning set size");
        cmd.add_flag("--no-n-structures", no_n_structures, "skip N-structure orientation");
        if (many_targets) {
            cmd.add_option("--seed", seed, "base sampling seed")->capture_default_str();
            cmd.add_option("--target", targets, "restrict to these targets (repeatable)");
            cmd.add_option("--jobs", jobs, "worker threads, 0 for all cores")->capture_default_str();
        }
    }

    elcs::RunConfig to_config() const {
        elcs::RunConfig c;
        c.algo = elcs::parse_algo(algo);
        c.ci.alpha = alpha;
        c.ci.reliability_k = reliability_k;
        c.ci.max_cond_size = max_cond;
        c.no_n_structures = no_n_structures;
        c.seed = seed;
        c.targets = targets;
        c.jobs = jobs;
        if (!(alpha > 0.0 && alpha < 1.0)) throw elcs::UsageError("--alpha must lie in (0, 1)");
        if (!(reliability_k >= 0.0)) throw elcs::UsageError("--reliability-k must be non-negative");
        return c;
    }
};

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw elcs::DataError("cannot write " + path.string());
    out << text;
    if (!out) throw elcs::DataError("write failed: " + path.string());
}

int cmd_sample(const std::string& bif, std::size_t n, std::uint64_t seed, const std::string& out) {
    if (n == 0) throw elcs::UsageError("sample: n must be positive");
    const auto net = elcs::load_bif(bif);
    const auto data = elcs::sample(net, n, seed);
    elcs::save_csv(data, out);
    std::cout << "wrote " << data.row_count() << " rows x " << data.var_count() << " variables to " << out << "\n";
    return Ok;
}

int cmd_learn(const std::string& path, const std::string& target, const ConfigFlags& flags, const std::string& out) {
    const auto config = flags.to_config();
    auto data = std::make_shared<const elcs::Dataset>(elcs::load_csv(path));
    const auto t = data->find(target);
    if (!t) throw elcs::UsageError("unknown target '" + target + "'");
    const auto result = elcs::learn(data, *t, config);
    json report = elcs::to_json(result, data->names());
    report["algo"] = elcs::to_string(config.algo);
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out.empty()) write_text(out, text);
    return Ok;
}

int cmd_benchmark(const std::string& bif, const std::vector<std::size_t>& sizes, std::size_t runs,
                  const ConfigFlags& flags, const std::string& out) {
    const auto config = flags.to_config();
    const auto net = elcs::load_bif(bif);
    const auto report = elcs::run_benchmark(net, std::filesystem::path(bif).stem().string(), sizes, runs, config);
    const std::string text = report.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        std::cerr << elcs::render_table(report);
    } else {
        write_text(out, text);
        std::cout << elcs::render_table(report);
    }
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local causal structure learning for discrete Bayesian networks"};
    app.require_subcommand(1);

    std::string bif, data_path, out, target;
    std::size_t rows = 0, runs = 1;
    std::uint64_t sample_seed = 1;
    std::vector<std::size_t> sizes{5000};

    auto* sample = app.add_subcommand("sample", "draw a dataset from a BIF network");
    sample->add_option("bif", bif, "network file")->required();
    sample->add_option("n", rows, "number of rows")->required();
    sample->add_option("--seed", sample_seed, "sampling seed")->capture_default_str();
    sample->add_option("--out", out, "CSV output path; a .card sidecar is written next to it")->required();

    ConfigFlags learn_flags;
    auto* learn = app.add_subcommand("learn", "learn the local structure of one target");
    learn->add_option("data", data_path, "CSV dataset")->required();
    learn->add_option("--target", target, "target variable name")->required();
    learn->add_option("--out", out, "also write the JSON report here");
    learn_flags.attach(*learn, false);

    ConfigFlags bench_flags;
    auto* bench = app.add_subcommand("benchmark", "sample, learn every target and score against the network");
    bench->add_option("bif", bif, "network file")->required();
    bench->add_option("--sizes", sizes, "sample sizes")->delimiter(',')->capture_default_str();
    bench->add_option("--runs", runs, "datasets per size")->capture_default_str();
    bench->add_option("--out", out, "JSON report path");
    bench_flags.attach(*bench, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (*sample) return cmd_sample(bif, rows, sample_seed, out);
        if (*learn) return cmd_learn(data_path, target, learn_flags, out);
        if (*bench) return cmd_benchmark(bif, sizes, runs, bench_flags, out);
    } catch (const elcs::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return Usage;
    } catch (const elcs::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return Data;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Internal;
    }
    return Usage;
}
