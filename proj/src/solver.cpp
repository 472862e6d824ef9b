#include "sparrow/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sparrow/brkga.hpp"

namespace sparrow {

const char* termination_name(Termination reason) {
    switch (reason) {
        case Termination::MaxIterations: return "max-iter";
        case Termination::NoImprovement: return "no-improve";
        case Termination::FullRevenue: return "all-scheduled-full-revenue";
    }
    return "?";
}

long SolverConfig::resolved_no_improve(int n) const {
    return max_no_improve >= 0 ? max_no_improve : 10L * n;
}

void SolverConfig::validate_or_throw(int n) const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
    if (population < 1) fail("population must be >= 1");
    if (max_iterations < 0) fail("max_iterations must be >= 0");
    if (resolved_no_improve(n) < 1) fail("max_no_improve must be >= 1");
    for (double p : {elite_fraction, mutant_fraction, elite_gene_prob, good_pair_prob,
                     alns_gate}) {
        if (p < 0.0 || p > 1.0) fail("probabilities and fractions must be in [0, 1]");
    }
    const long p_e = std::lround(elite_fraction * population);
    const long p_m = std::lround(mutant_fraction * population);
    if (p_e < 1) fail("elite set must not be empty");
    if (p_e + p_m > population) fail("elite + mutants exceed the population");
    if (!(alns.reaction >= 0.0 && alns.reaction <= 1.0)) fail("reaction factor in [0, 1]");
    if (!(alns.cooling > 0.0 && alns.cooling <= 1.0)) fail("cooling factor in (0, 1]");
    if (!(alns.sigma1 > alns.sigma2 && alns.sigma2 > alns.sigma3 && alns.sigma3 > 0.0)) {
        fail("score increments must satisfy sigma1 > sigma2 > sigma3 > 0");
    }
    if (!(alns.initial_temperature > 0.0)) fail("initial temperature must be positive");
    if (!(alns.removal_fraction > 0.0 && alns.removal_fraction <= 1.0)) {
        fail("removal fraction must be in (0, 1]");
    }
}

namespace {

struct Member {
    Chromosome chromosome;
    Schedule schedule;
    double fitness = 0.0;
    bool pairs_ready = false;
    std::vector<GoodPair> pairs;
};

}  // namespace

SolveResult solve(const Instance& instance, const SolverConfig& config) {
    const int n = instance.n();
    config.validate_or_throw(n);
    const auto t0 = std::chrono::steady_clock::now();

    const long no_improve_limit = config.resolved_no_improve(n);
    const int p = config.population;
    const int p_e = static_cast<int>(std::lround(config.elite_fraction * p));
    const int p_m = static_cast<int>(std::lround(config.mutant_fraction * p));
    const double r_d = decode_ratio(instance);
    const double total_revenue = instance.total_revenue();

    SolveResult result;
    result.best_fitness = 0.0;

    std::vector<Member> members(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        Rng rng(derive_seed(config.seed, 0, static_cast<std::uint64_t>(i), StreamPurpose::Init));
        members[static_cast<std::size_t>(i)].chromosome = init_chromosome_bounded(instance, rng);
    }

    AlnsState alns_state(config.alns.initial_temperature);

    auto decode_member = [&](Member& m, long gen, int idx) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(gen),
                            static_cast<std::uint64_t>(idx), StreamPurpose::Decode));
        m.schedule = decode(instance, m.chromosome, r_d, rng);
        m.fitness = m.schedule.fitness;
        m.pairs_ready = false;
    };

    if (config.max_iterations == 0) {
        // Degenerate budget: report the best of the initial decodes.
        for (int i = 0; i < p; ++i) {
            Member& m = members[static_cast<std::size_t>(i)];
            decode_member(m, 0, i);
            if (m.fitness > result.best_fitness) {
                result.best_fitness = m.fitness;
                result.best = m.schedule;
            }
        }
        result.reason = Termination::MaxIterations;
        result.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return result;
    }

    long gen = 0;
    long no_improve = 0;
    while (true) {
        const double best_before_gen = result.best_fitness;

        for (int i = 0; i < p; ++i) {
            Member& m = members[static_cast<std::size_t>(i)];
            decode_member(m, gen, i);

            MemberTrace trace;
            trace.generation = gen;
            trace.member = i;
            trace.decoded_fitness = m.fitness;
            trace.best_before = result.best_fitness;

            if (config.use_alns && m.fitness >= config.alns_gate * result.best_fitness) {
                Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(gen),
                                    static_cast<std::uint64_t>(i), StreamPurpose::Alns));
                const PassOutcome outcome =
                    alns_pass(instance, m.schedule, &m.chromosome, alns_state,
                              result.best_fitness, config.alns, rng);
                m.fitness = m.schedule.fitness;
                ++result.alns_invocations;
                if (outcome.accepted) ++result.alns_accepted;
                trace.alns_ran = true;
                trace.alns_accepted = outcome.accepted;
            }

            if (m.fitness > result.best_fitness) {
                result.best_fitness = m.fitness;
                result.best = m.schedule;
            }

            if (config.observer) {
                trace.final_fitness = m.fitness;
                trace.schedule = &m.schedule;
                config.observer(trace);
            }
        }

        std::stable_sort(members.begin(), members.end(),
                         [](const Member& a, const Member& b) { return a.fitness > b.fitness; });

        auto pairs_of = [&](Member& m) -> const std::vector<GoodPair>& {
            if (!m.pairs_ready) {
                m.pairs = mark_good_pairs(instance, m.schedule, config.good_pair_threshold);
                m.pairs_ready = true;
            }
            return m.pairs;
        };

        std::vector<Member> next;
        next.reserve(static_cast<std::size_t>(p));
        for (int i = 0; i < p_e; ++i) next.push_back(members[static_cast<std::size_t>(i)]);
        for (int j = 0; j < p_m; ++j) {
            Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(gen),
                                static_cast<std::uint64_t>(p_e + j), StreamPurpose::Mutation));
            Member m;
            m.chromosome = init_chromosome_bounded(instance, rng);
            next.push_back(std::move(m));
        }
        const int crossover_count = p - p_e - p_m;
        for (int j = 0; j < crossover_count; ++j) {
            Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(gen),
                                static_cast<std::uint64_t>(p_e + p_m + j),
                                StreamPurpose::Crossover));
            Member& elite = members[rng.index(static_cast<std::size_t>(p_e))];
            Member& other =
                members[static_cast<std::size_t>(p_e) + rng.index(static_cast<std::size_t>(p - p_e))];
            Member child;
            child.chromosome = intelligent_crossover(
                elite.chromosome, other.chromosome, pairs_of(elite), pairs_of(other),
                config.elite_gene_prob, config.good_pair_prob, rng);
            next.push_back(std::move(child));
        }
        members = std::move(next);

        alns_state.temperature *= config.alns.cooling;
        update_weights(alns_state, config.alns.reaction);
        for (Member& m : members) normalize_keys(m.chromosome);

        ++gen;
        result.trace.push_back(result.best_fitness);
        no_improve = result.best_fitness > best_before_gen + kTol ? 0 : no_improve + 1;

        if (result.best_fitness >= total_revenue - kTol &&
            result.best.sequence.size() == static_cast<std::size_t>(n)) {
            result.reason = Termination::FullRevenue;
            break;
        }
        if (gen >= config.max_iterations) {
            result.reason = Termination::MaxIterations;
            break;
        }
        if (no_improve >= no_improve_limit) {
            result.reason = Termination::NoImprovement;
            break;
        }
    }

    result.generations = gen;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

SolverConfig config_for_set(int set_tag, int n, std::uint64_t seed) {
    SolverConfig cfg;
    cfg.seed = seed;
    cfg.parameter_set = set_tag;
    switch (set_tag) {
        case 1:
            cfg.population = 1;
            cfg.max_no_improve = 200L * n;
            cfg.max_iterations = 1'000'000;
            cfg.use_alns = true;
            break;
        case 2:
            cfg.population = 10;
            cfg.max_no_improve = 20L * n;
            cfg.max_iterations = 100'000;
            cfg.use_alns = true;
            break;
        case 3:
            cfg.population = 20;
            cfg.max_no_improve = 10L * n;
            cfg.max_iterations = 50'000;
            cfg.use_alns = true;
            break;
        case 4:
            cfg.population = 50;
            cfg.max_no_improve = 4L * n;
            cfg.max_iterations = 20'000;
            cfg.use_alns = true;
            break;
        case 5:
            cfg.population = 1000;
            cfg.max_no_improve = n;
            cfg.max_iterations = 2'000;
            cfg.use_alns = false;
            break;
        default:
            throw std::invalid_argument("parameter set tag must be 1..5");
    }
    return cfg;
}

SolveResult run_parameter_set(const Instance& instance, int set_tag, std::uint64_t seed) {
    return solve(instance, config_for_set(set_tag, instance.n(), seed));
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double out;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad value for " + key);
    }
    if (used != value.size()) throw std::invalid_argument("config: bad value for " + key);
    return out;
}

long parse_long(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long out;
    try {
        out = std::stol(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad value for " + key);
    }
    if (used != value.size()) throw std::invalid_argument("config: bad value for " + key);
    return out;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

SolverConfig apply_config_text(const SolverConfig& base, const std::string& text) {
    SolverConfig cfg = base;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: expected 'key = value', got: " + line);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "population") cfg.population = static_cast<int>(parse_long(key, value));
        else if (key == "max_iterations") cfg.max_iterations = parse_long(key, value);
        else if (key == "max_no_improve") cfg.max_no_improve = parse_long(key, value);
        else if (key == "elite_fraction") cfg.elite_fraction = parse_double(key, value);
        else if (key == "mutant_fraction") cfg.mutant_fraction = parse_double(key, value);
        else if (key == "elite_gene_prob") cfg.elite_gene_prob = parse_double(key, value);
        else if (key == "good_pair_threshold") cfg.good_pair_threshold = parse_double(key, value);
        else if (key == "good_pair_prob") cfg.good_pair_prob = parse_double(key, value);
        else if (key == "alns_gate") cfg.alns_gate = parse_double(key, value);
        else if (key == "use_alns") cfg.use_alns = parse_long(key, value) != 0;
        else if (key == "reaction") cfg.alns.reaction = parse_double(key, value);
        else if (key == "cooling") cfg.alns.cooling = parse_double(key, value);
        else if (key == "sigma1") cfg.alns.sigma1 = parse_double(key, value);
        else if (key == "sigma2") cfg.alns.sigma2 = parse_double(key, value);
        else if (key == "sigma3") cfg.alns.sigma3 = parse_double(key, value);
        else if (key == "removal_fraction") cfg.alns.removal_fraction = parse_double(key, value);
        else if (key == "initial_temperature") cfg.alns.initial_temperature = parse_double(key, value);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
        else if (key == "parameter_set") cfg.parameter_set = static_cast<int>(parse_long(key, value));
        else throw std::invalid_argument("config: unknown key: " + key);
    }
    return cfg;
}

SolverConfig load_config_file(const SolverConfig& base, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return apply_config_text(base, buffer.str());
}

}  // namespace sparrow
