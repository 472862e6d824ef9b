#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sparrow/alns.hpp"
#include "sparrow/model.hpp"

namespace sparrow {

enum class Termination { MaxIterations, NoImprovement, FullRevenue };

const char* termination_name(Termination reason);

/// Per-member hook fired once per generation after decoding and the optional
/// destroy-repair pass; used by tests for instrumentation.
struct MemberTrace {
    long generation = 0;
    int member = 0;
    double decoded_fitness = 0.0;
    bool alns_ran = false;
    bool alns_accepted = false;
    double final_fitness = 0.0;
    double best_before = 0.0;  // f* before this member was processed
    const Schedule* schedule = nullptr;
};

struct SolverConfig {
    int population = 20;
    long max_iterations = 50000;
    long max_no_improve = -1;       // -1 resolves to 10 * n at solve time
    double elite_fraction = 0.5;    // p_e / p
    double mutant_fraction = 0.1;   // p_m / p
    double elite_gene_prob = 0.7;   // rho_e
    double good_pair_threshold = 2.0;  // f_g
    double good_pair_prob = 0.95;   // p_g
    double alns_gate = 0.9;         // p_f; pass only members with f >= p_f * f*
    bool use_alns = true;
    AlnsParams alns;
    std::uint64_t seed = 1;
    int parameter_set = 3;          // informational tag, 1..5
    std::function<void(const MemberTrace&)> observer;

    /// Throws std::invalid_argument on out-of-range values. `n` resolves the
    /// automatic no-improvement limit.
    void validate_or_throw(int n) const;
    long resolved_no_improve(int n) const;
};

struct SolveResult {
    Schedule best;
    double best_fitness = 0.0;
    long generations = 0;
    Termination reason = Termination::MaxIterations;
    double wall_seconds = 0.0;
    std::vector<double> trace;      // f* after each generation
    long long alns_invocations = 0;
    long long alns_accepted = 0;
};

SolveResult solve(const Instance& instance, const SolverConfig& config);

/// The five published parameter sets: (population, no-improvement limit,
/// iteration cap, whether the destroy-repair pass runs).
///   1: (1,    200n, 1'000'000, yes)   pure neighbourhood search
///   2: (10,   20n,  100'000,   yes)
///   3: (20,   10n,  50'000,    yes)   the defaults
///   4: (50,   4n,   20'000,    yes)
///   5: (1000, n,    2'000,     no)    pure genetic search
SolverConfig config_for_set(int set_tag, int n, std::uint64_t seed);

SolveResult run_parameter_set(const Instance& instance, int set_tag, std::uint64_t seed);

/// Key-value config file support ("key = value" lines, '#' comments). Applies
/// recognized keys over `base` and throws on unknown keys or bad values.
SolverConfig apply_config_text(const SolverConfig& base, const std::string& text);
SolverConfig load_config_file(const SolverConfig& base, const std::string& path);

}  // namespace sparrow
