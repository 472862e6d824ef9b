#include "sparrow/alns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sparrow/insertion.hpp"

namespace sparrow {

const char* removal_name(RemovalKind kind) {
    switch (kind) {
        case RemovalKind::Random: return "random";
        case RemovalKind::MinRevenue: return "min-revenue";
        case RemovalKind::MinUnitRevenue: return "min-unit-revenue";
        case RemovalKind::MaxSetup: return "max-setup";
        case RemovalKind::WorstSequence: return "worst-sequence";
    }
    return "?";
}

const char* insertion_name(InsertionKind kind) {
    switch (kind) {
        case InsertionKind::MaxRevenue: return "max-revenue";
        case InsertionKind::MaxUnitRevenue: return "max-unit-revenue";
    }
    return "?";
}

std::size_t select_operator(std::span<const double> weights, Rng& rng) {
    if (weights.empty()) throw std::invalid_argument("operator set is empty");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("operator weights must be positive");
        total += w;
    }
    const double pick = rng.uniform() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        acc += weights[k];
        if (pick < acc) return k;
    }
    return weights.size() - 1;
}

std::vector<int> build_order_bank(const Instance& instance, const Schedule& schedule) {
    std::vector<char> scheduled(static_cast<std::size_t>(instance.n()), 0);
    for (int id : schedule.sequence) scheduled[static_cast<std::size_t>(id)] = 1;
    std::vector<int> bank;
    for (int id = 0; id < instance.n(); ++id) {
        if (!scheduled[static_cast<std::size_t>(id)]) bank.push_back(id);
    }
    return bank;
}

namespace {

// Positions to drop, according to the removal operator. `count` <= |S|.
std::vector<std::size_t> pick_positions(const Instance& instance, RemovalKind kind,
                                        const Schedule& schedule, std::size_t count,
                                        Rng& rng) {
    const std::size_t len = schedule.size();
    std::vector<std::size_t> positions(len);
    std::iota(positions.begin(), positions.end(), 0);

    auto take_sorted = [&](auto key_less) {
        std::stable_sort(positions.begin(), positions.end(), key_less);
        positions.resize(count);
    };
    auto order_at = [&](std::size_t pos) -> const Order& {
        return instance.orders[static_cast<std::size_t>(schedule.sequence[pos])];
    };

    switch (kind) {
        case RemovalKind::Random: {
            // Partial Fisher-Yates over the position list.
            for (std::size_t k = 0; k < count; ++k) {
                const std::size_t j = k + rng.index(len - k);
                std::swap(positions[k], positions[j]);
            }
            positions.resize(count);
            break;
        }
        case RemovalKind::MinRevenue:
            take_sorted([&](std::size_t a, std::size_t b) {
                const double ra = order_at(a).revenue;
                const double rb = order_at(b).revenue;
                if (ra != rb) return ra < rb;
                return schedule.sequence[a] < schedule.sequence[b];
            });
            break;
        case RemovalKind::MinUnitRevenue:
            take_sorted([&](std::size_t a, std::size_t b) {
                const double ua = order_at(a).revenue / order_at(a).processing;
                const double ub = order_at(b).revenue / order_at(b).processing;
                if (ua != ub) return ua < ub;
                return schedule.sequence[a] < schedule.sequence[b];
            });
            break;
        case RemovalKind::MaxSetup: {
            // Setup actually paid before each order in the current sequence.
            std::vector<double> incurred(len, 0.0);
            for (std::size_t k = 0; k < len; ++k) {
                const int prev = k == 0 ? -1 : schedule.sequence[k - 1];
                incurred[k] = instance.transition_setup(prev, schedule.sequence[k]);
            }
            take_sorted([&](std::size_t a, std::size_t b) {
                if (incurred[a] != incurred[b]) return incurred[a] > incurred[b];
                return schedule.sequence[a] < schedule.sequence[b];
            });
            break;
        }
        case RemovalKind::WorstSequence: {
            // Contiguous run of `count` orders with the lowest reward per
            // unit of spanned time.
            std::vector<double> rewards(len);
            for (std::size_t k = 0; k < len; ++k) {
                rewards[k] = reward_at(order_at(k), schedule.starts[k]);
            }
            double best_quality = std::numeric_limits<double>::infinity();
            std::size_t best_at = 0;
            double window_sum = 0.0;
            for (std::size_t k = 0; k < count; ++k) window_sum += rewards[k];
            for (std::size_t at = 0; at + count <= len; ++at) {
                if (at > 0) window_sum += rewards[at + count - 1] - rewards[at - 1];
                const std::size_t last = at + count - 1;
                const double span = schedule.starts[last] +
                                    order_at(last).processing - schedule.starts[at];
                const double quality = window_sum / span;
                if (quality < best_quality - kTol) {
                    best_quality = quality;
                    best_at = at;
                }
            }
            positions.resize(count);
            std::iota(positions.begin(), positions.end(), best_at);
            break;
        }
    }
    return positions;
}

}  // namespace

std::vector<int> apply_removal(const Instance& instance, RemovalKind kind,
                               Schedule& schedule, SlackTable& slacks,
                               std::size_t count, Rng& rng, Chromosome* genes) {
    count = std::min(count, schedule.size());
    if (count == 0) return {};

    std::vector<std::size_t> positions = pick_positions(instance, kind, schedule, count, rng);
    std::vector<char> drop(schedule.size(), 0);
    std::vector<int> removed;
    removed.reserve(count);
    for (std::size_t pos : positions) drop[pos] = 1;

    std::vector<int> survivors;
    survivors.reserve(schedule.size() - count);
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (drop[k]) {
            removed.push_back(schedule.sequence[k]);
        } else {
            survivors.push_back(schedule.sequence[k]);
        }
    }

    // Survivors are rescheduled as early as possible. Setups do not obey the
    // triangle inequality, so a survivor can become infeasible once its old
    // predecessor is gone (the new adjacent setup may be larger than the
    // removed chain); such orders cascade into the bank as well.
    ScheduleBuild rebuilt = earliest_start_schedule(instance, survivors);
    while (!rebuilt.feasible()) {
        const std::size_t victim = rebuilt.infeasible->position;
        removed.push_back(survivors[victim]);
        survivors.erase(survivors.begin() + static_cast<std::ptrdiff_t>(victim));
        rebuilt = earliest_start_schedule(instance, survivors);
    }
    schedule = std::move(*rebuilt.schedule);
    slacks = compute_slacks(instance, schedule);

    if (genes != nullptr) {
        double g_max = 0.0;
        for (int id : schedule.sequence) {
            g_max = std::max(g_max, genes->genes[static_cast<std::size_t>(id)]);
        }
        std::vector<int> by_id = removed;
        std::sort(by_id.begin(), by_id.end());
        for (int id : by_id) reassign_gene_removed(*genes, id, g_max, rng);
    }
    return removed;
}

void apply_insertion(const Instance& instance, InsertionKind kind, Schedule& schedule,
                     SlackTable& slacks, std::vector<int>& bank, Rng& rng,
                     Chromosome* genes) {
    std::vector<int> queue = bank;
    auto unit = [&](int id) {
        const Order& o = instance.orders[static_cast<std::size_t>(id)];
        return o.revenue / o.processing;
    };
    std::sort(queue.begin(), queue.end(), [&](int a, int b) {
        const double ka = kind == InsertionKind::MaxRevenue
                              ? instance.orders[static_cast<std::size_t>(a)].revenue
                              : unit(a);
        const double kb = kind == InsertionKind::MaxRevenue
                              ? instance.orders[static_cast<std::size_t>(b)].revenue
                              : unit(b);
        if (ka != kb) return ka > kb;
        return a < b;
    });

    for (int id : queue) {
        const auto event = fast_insert(instance, schedule, slacks, id);
        if (!event) continue;
        bank.erase(std::remove(bank.begin(), bank.end(), id), bank.end());
        if (genes != nullptr) {
            const std::size_t pos = event->position;
            const double lower =
                pos == 0 ? 0.0
                         : genes->genes[static_cast<std::size_t>(schedule.sequence[pos - 1])];
            const double upper =
                pos + 1 == schedule.size()
                    ? 1.0
                    : genes->genes[static_cast<std::size_t>(schedule.sequence[pos + 1])];
            reassign_gene_inserted(*genes, id, lower, upper, rng);
        }
    }
}

bool sa_accept(double current_fitness, double candidate_fitness, double temperature,
               Rng& rng) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
    if (candidate_fitness > current_fitness) return true;
    if (current_fitness == 0.0) return candidate_fitness >= 0.0;
    const double rho = std::exp((100.0 / temperature) *
                                ((candidate_fitness - current_fitness) / current_fitness));
    return rng.uniform() < rho;
}

namespace {

template <std::size_t N>
void update_group(std::array<double, N>& weights, std::array<double, N>& scores,
                  double reaction) {
    double total = 0.0;
    for (double s : scores) total += s;
    if (total > 0.0) {
        for (std::size_t k = 0; k < N; ++k) {
            weights[k] = (1.0 - reaction) * weights[k] + reaction * scores[k] / total;
        }
    }
    scores.fill(0.0);
}

}  // namespace

void update_weights(AlnsState& state, double reaction) {
    update_group(state.removal_weights, state.removal_scores, reaction);
    update_group(state.insertion_weights, state.insertion_scores, reaction);
}

void reassign_gene_removed(Chromosome& genes, int order, double max_scheduled_gene,
                           Rng& rng) {
    double gene;
    if (max_scheduled_gene >= 1.0 - 1e-9) {
        gene = max_scheduled_gene + (1.0 - max_scheduled_gene) / 2.0;
    } else {
        gene = rng.uniform(max_scheduled_gene, 1.0);
        if (gene == max_scheduled_gene) gene += kGeneEpsilon;
    }
    genes.genes[static_cast<std::size_t>(order)] = std::min(gene, 1.0);
}

void reassign_gene_inserted(Chromosome& genes, int order, double lower, double upper,
                            Rng& rng) {
    double gene;
    if (upper - lower <= 2.0 * kGeneEpsilon) {
        gene = std::min(lower + kGeneEpsilon, 1.0);
    } else {
        gene = rng.uniform(lower, upper);
        if (gene == lower) gene += kGeneEpsilon;
    }
    genes.genes[static_cast<std::size_t>(order)] = std::clamp(gene, 0.0, 1.0);
}

void repair_encoding(const Instance& instance, const Schedule& schedule,
                     Chromosome& genes) {
    const std::size_t n = genes.genes.size();
    if (n != static_cast<std::size_t>(instance.n())) {
        throw std::invalid_argument("chromosome length does not match instance");
    }
    std::vector<int> rank_of(n, -1);
    int next_rank = 0;
    for (int id : schedule.sequence) {
        rank_of[static_cast<std::size_t>(id)] = next_rank++;
    }
    std::vector<int> banked = build_order_bank(instance, schedule);
    std::sort(banked.begin(), banked.end(), [&](int a, int b) {
        const double ga = genes.genes[static_cast<std::size_t>(a)];
        const double gb = genes.genes[static_cast<std::size_t>(b)];
        if (ga != gb) return ga < gb;
        return a < b;
    });
    for (int id : banked) rank_of[static_cast<std::size_t>(id)] = next_rank++;
    for (std::size_t i = 0; i < n; ++i) {
        genes.genes[i] = static_cast<double>(rank_of[i] + 1) / static_cast<double>(n + 1);
    }
}

PassOutcome alns_pass(const Instance& instance, Schedule& schedule, Chromosome* genes,
                      AlnsState& state, double best_fitness, const AlnsParams& params,
                      Rng& rng) {
    PassOutcome outcome;
    outcome.fitness_before = schedule.fitness;

    Schedule working = schedule;
    Chromosome working_genes;
    Chromosome* wg = nullptr;
    if (genes != nullptr) {
        working_genes = *genes;
        repair_encoding(instance, working, working_genes);
        wg = &working_genes;
    }

    const std::size_t removal_op =
        select_operator(std::span<const double>(state.removal_weights), rng);
    outcome.removal = static_cast<RemovalKind>(removal_op);

    std::vector<int> bank = build_order_bank(instance, working);
    SlackTable slacks = compute_slacks(instance, working);

    if (!working.empty()) {
        const std::size_t p_d = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(params.removal_fraction *
                                                   static_cast<double>(working.size()))));
        std::vector<int> removed =
            apply_removal(instance, outcome.removal, working, slacks, p_d, rng, wg);
        bank.insert(bank.end(), removed.begin(), removed.end());
        std::sort(bank.begin(), bank.end());
    }

    const std::size_t insertion_op =
        select_operator(std::span<const double>(state.insertion_weights), rng);
    outcome.insertion = static_cast<InsertionKind>(insertion_op);
    apply_insertion(instance, outcome.insertion, working, slacks, bank, rng, wg);

    if (wg != nullptr) {
        // Orders that stayed banked must not decode ahead of scheduled ones;
        // push any such gene above the scheduled range, like a removal.
        double g_max = 0.0;
        for (int id : working.sequence) {
            g_max = std::max(g_max, wg->genes[static_cast<std::size_t>(id)]);
        }
        for (int id : bank) {
            if (wg->genes[static_cast<std::size_t>(id)] <= g_max) {
                reassign_gene_removed(*wg, id, g_max, rng);
            }
        }
    }

    outcome.fitness_after = working.fitness;
    const double f_old = schedule.fitness;
    const double f_new = working.fitness;
    if (f_new > best_fitness) {
        outcome.score_tier = 3;
        state.removal_scores[removal_op] += params.sigma1;
        state.insertion_scores[insertion_op] += params.sigma1;
    } else if (f_new > f_old) {
        outcome.score_tier = 2;
        state.removal_scores[removal_op] += params.sigma2;
        state.insertion_scores[insertion_op] += params.sigma2;
    } else if (sa_accept(f_old, f_new, state.temperature, rng)) {
        outcome.score_tier = 1;
        state.removal_scores[removal_op] += params.sigma3;
        state.insertion_scores[insertion_op] += params.sigma3;
    } else {
        outcome.accepted = false;
        return outcome;  // schedule and genes untouched
    }

    outcome.accepted = true;
    schedule = std::move(working);
    if (genes != nullptr) *genes = std::move(working_genes);
    return outcome;
}

}  // namespace sparrow
