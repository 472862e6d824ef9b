// Command-line front end: instance generation, solving, the exact oracle,
// benchmark grids and instance analytics.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparrow/harness.hpp"
#include "sparrow/instance_gen.hpp"
#include "sparrow/instance_io.hpp"
#include "sparrow/oracle.hpp"
#include "sparrow/properties.hpp"
#include "sparrow/rng.hpp"
#include "sparrow/solver.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GenerateArgs {
    std::string family = "cesaret";
    int n = 25;
    double tau = 0.5;
    double range = 0.5;
    double q = 0.0;
    double scale = 1.0;
    int count = 10;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

int cmd_generate(const GenerateArgs& args) {
    fs::create_directories(args.out_dir);
    for (int k = 0; k < args.count; ++k) {
        sparrow::GenSpec spec;
        spec.family = sparrow::family_from_name(args.family);
        spec.n = args.n;
        spec.tau = args.tau;
        spec.range = args.range;
        spec.q = args.q;
        spec.scale = args.scale;
        spec.seed = sparrow::derive_seed(args.seed, 0, static_cast<std::uint64_t>(k),
                                         sparrow::StreamPurpose::Instance);
        const sparrow::Instance instance = sparrow::generate(spec);
        const fs::path path = fs::path(args.out_dir) / (instance.label + ".oas");
        sparrow::write_instance(instance, path.string());
        std::cout << path.string() << '\n';
    }
    return 0;
}

struct SolveArgs {
    std::string instance_path;
    std::string config_path;
    int set_tag = 3;
    std::uint64_t seed = 1;
    int initial_setup = -1;  // -1: keep the file's flag
    std::vector<std::string> overrides;
    bool print_schedule = false;
};

int cmd_solve(const SolveArgs& args) {
    sparrow::Instance instance = sparrow::read_instance(args.instance_path);
    if (args.initial_setup >= 0) instance.initial_setup = args.initial_setup != 0;

    sparrow::SolverConfig config =
        sparrow::config_for_set(args.set_tag, instance.n(), args.seed);
    if (!args.config_path.empty()) {
        config = sparrow::load_config_file(config, args.config_path);
    }
    std::string override_text;
    for (const std::string& kv : args.overrides) override_text += kv + "\n";
    if (!override_text.empty()) config = sparrow::apply_config_text(config, override_text);
    config.seed = args.seed;

    const sparrow::SolveResult result = sparrow::solve(instance, config);

    json out;
    out["instance"] = instance.label;
    out["fitness"] = result.best_fitness;
    out["generations"] = result.generations;
    out["termination"] = sparrow::termination_name(result.reason);
    out["wall_seconds"] = result.wall_seconds;
    out["alns_invocations"] = result.alns_invocations;
    out["accepted"] = result.best.sequence;
    if (args.print_schedule) {
        json sched = json::array();
        for (std::size_t k = 0; k < result.best.size(); ++k) {
            json row;
            row["order"] = result.best.sequence[k];
            row["start"] = result.best.starts[k];
            row["tardiness"] = result.best.tardiness[k];
            sched.push_back(row);
        }
        out["schedule"] = sched;
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct OracleArgs {
    std::string instance_path;
    int limit = 9;
    int initial_setup = -1;
};

int cmd_oracle(const OracleArgs& args) {
    sparrow::Instance instance = sparrow::read_instance(args.instance_path);
    if (args.initial_setup >= 0) instance.initial_setup = args.initial_setup != 0;
    const sparrow::OracleResult result = sparrow::exact_solve(instance, args.limit);
    json out;
    out["optimal"] = result.optimal;
    out["sequence"] = result.sequence;
    out["nodes"] = result.nodes;
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct BenchArgs {
    std::vector<int> sizes = {25};
    std::vector<double> taus = {0.5};
    std::vector<double> ranges = {0.5};
    std::string family = "cesaret";
    std::vector<double> qs = {0.0};
    std::vector<double> scales = {1.0};
    int instances_per_cell = 10;
    int runs = 10;
    std::vector<int> sets = {3};
    std::uint64_t seed = 1;
    std::string reference = "cross";
    std::string reference_file;
    int threads = 1;
    std::string out_dir = "bench-out";
    std::string replay;
};

int cmd_bench(const BenchArgs& args) {
    if (!args.replay.empty()) {
        sparrow::replay_manifest(args.replay, args.out_dir, args.threads);
        std::cout << "replayed into " << args.out_dir << '\n';
        return 0;
    }
    sparrow::GridSpec spec;
    const sparrow::Family family = sparrow::family_from_name(args.family);
    for (int n : args.sizes) {
        for (double tau : args.taus) {
            for (double range : args.ranges) {
                for (double q : args.qs) {
                    for (double c : args.scales) {
                        sparrow::GenSpec cell;
                        cell.family = family;
                        cell.n = n;
                        cell.tau = tau;
                        cell.range = range;
                        cell.q = q;
                        cell.scale = c;
                        spec.cells.push_back(cell);
                    }
                }
            }
        }
    }
    spec.instances_per_cell = args.instances_per_cell;
    spec.runs_per_instance = args.runs;
    spec.parameter_sets = args.sets;
    spec.master_seed = args.seed;
    spec.threads = args.threads;
    spec.out_dir = args.out_dir;
    if (args.reference == "none") spec.reference = sparrow::ReferenceMode::None;
    else if (args.reference == "oracle") spec.reference = sparrow::ReferenceMode::Oracle;
    else if (args.reference == "cross") spec.reference = sparrow::ReferenceMode::CrossBest;
    else if (args.reference == "file") spec.reference = sparrow::ReferenceMode::File;
    else throw CLI::ValidationError("--reference must be none|oracle|cross|file");
    spec.reference_file = args.reference_file;

    sparrow::run_grid(spec);
    std::cout << "wrote " << spec.out_dir << "/{runs.csv,gaps.csv,properties.csv,manifest.json}\n";
    return 0;
}

struct AnalyzeArgs {
    std::vector<std::string> instance_paths;
    std::string out_file;  // empty: stdout
};

int cmd_analyze(const AnalyzeArgs& args) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!args.out_file.empty()) {
        file.open(args.out_file, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + args.out_file);
        out = &file;
    }
    *out << sparrow::property_csv_header() << '\n';
    for (const std::string& path : args.instance_paths) {
        const sparrow::Instance instance = sparrow::read_instance(path);
        *out << sparrow::property_csv_row(instance.label, sparrow::properties(instance)) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OAS solver: memetic search with destroy-repair refinement"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "generate benchmark instances");
    generate->add_option("--family", gen.family, "cesaret|satellite|commerce|repairman");
    generate->add_option("-n,--orders", gen.n, "order count");
    generate->add_option("--tau", gen.tau, "tardiness factor");
    generate->add_option("-R,--range", gen.range, "due time range factor");
    generate->add_option("-q", gen.q, "commerce revenue mix in [0,1]");
    generate->add_option("-c,--scale", gen.scale, "repairman horizon scale");
    generate->add_option("--count", gen.count, "instances to generate");
    generate->add_option("--seed", gen.seed, "master seed");
    generate->add_option("-o,--out-dir", gen.out_dir, "output directory");

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "solve one instance file");
    solve->add_option("instance", solve_args.instance_path, "instance file")->required();
    solve->add_option("--config", solve_args.config_path, "key=value config file");
    solve->add_option("--set", solve_args.set_tag, "parameter set 1..5");
    solve->add_option("--seed", solve_args.seed, "random seed");
    solve->add_option("--initial-setup", solve_args.initial_setup,
                      "override the instance's dummy-origin setup flag (0/1)");
    solve->add_option("-D,--define", solve_args.overrides,
                      "config override, e.g. -D population=50");
    solve->add_flag("--schedule", solve_args.print_schedule, "print start times");

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle", "exact optimum of a small instance");
    oracle->add_option("instance", oracle_args.instance_path, "instance file")->required();
    oracle->add_option("--limit", oracle_args.limit, "maximum order count");
    oracle->add_option("--initial-setup", oracle_args.initial_setup,
                       "override the instance's dummy-origin setup flag (0/1)");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "run an experiment grid");
    bench->add_option("-n,--orders", bench_args.sizes, "order counts");
    bench->add_option("--tau", bench_args.taus, "tardiness factors");
    bench->add_option("-R,--range", bench_args.ranges, "due time range factors");
    bench->add_option("--family", bench_args.family, "instance family");
    bench->add_option("-q", bench_args.qs, "commerce mixes");
    bench->add_option("-c,--scale", bench_args.scales, "repairman scales");
    bench->add_option("--instances", bench_args.instances_per_cell, "instances per cell");
    bench->add_option("--runs", bench_args.runs, "runs per instance");
    bench->add_option("--sets", bench_args.sets, "parameter sets to compare");
    bench->add_option("--seed", bench_args.seed, "master seed");
    bench->add_option("--reference", bench_args.reference, "none|oracle|cross|file");
    bench->add_option("--reference-file", bench_args.reference_file, "instance,value CSV");
    bench->add_option("--threads", bench_args.threads, "parallel runs");
    bench->add_option("-o,--out-dir", bench_args.out_dir, "output directory");
    bench->add_option("--replay", bench_args.replay, "re-execute a manifest.json");

    AnalyzeArgs analyze_args;
    CLI::App* analyze = app.add_subcommand("analyze", "instance property metrics");
    analyze->add_option("instances", analyze_args.instance_paths, "instance files")->required();
    analyze->add_option("-o,--out", analyze_args.out_file, "output CSV (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(gen);
        if (solve->parsed()) return cmd_solve(solve_args);
        if (oracle->parsed()) return cmd_oracle(oracle_args);
        if (bench->parsed()) return cmd_bench(bench_args);
        if (analyze->parsed()) return cmd_analyze(analyze_args);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
