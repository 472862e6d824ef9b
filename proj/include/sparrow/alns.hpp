#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "sparrow/brkga.hpp"
#include "sparrow/model.hpp"
#include "sparrow/rng.hpp"
#include "sparrow/slack.hpp"

namespace sparrow {

enum class RemovalKind {
    Random = 0,
    MinRevenue,
    MinUnitRevenue,
    MaxSetup,
    WorstSequence,
};
inline constexpr std::size_t kRemovalKinds = 5;

enum class InsertionKind {
    MaxRevenue = 0,
    MaxUnitRevenue,
};
inline constexpr std::size_t kInsertionKinds = 2;

const char* removal_name(RemovalKind kind);
const char* insertion_name(InsertionKind kind);

struct AlnsParams {
    double reaction = 0.5;            // lambda
    double cooling = 0.9975;          // c_a, applied once per generation
    double sigma1 = 30.0;             // new global best
    double sigma2 = 20.0;             // improved the current solution
    double sigma3 = 10.0;             // accepted by simulated annealing
    double removal_fraction = 0.4;    // p_d = max(1, floor(fraction * |S|))
    double initial_temperature = 100.0;
};

/// Adaptive operator bookkeeping shared by a whole population.
struct AlnsState {
    std::array<double, kRemovalKinds> removal_weights;
    std::array<double, kRemovalKinds> removal_scores;
    std::array<double, kInsertionKinds> insertion_weights;
    std::array<double, kInsertionKinds> insertion_scores;
    double temperature = 100.0;

    explicit AlnsState(double temperature0 = 100.0) : temperature(temperature0) {
        removal_weights.fill(1.0);
        removal_scores.fill(0.0);
        insertion_weights.fill(1.0);
        insertion_scores.fill(0.0);
    }
};

/// Roulette wheel: index k with probability weight_k / sum(weights).
/// Throws on an empty set or non-positive total weight.
std::size_t select_operator(std::span<const double> weights, Rng& rng);

/// Unscheduled order ids, ascending.
std::vector<int> build_order_bank(const Instance& instance, const Schedule& schedule);

/// Removes min(count, |S|) orders according to `kind`, recomputes earliest
/// starts and slacks for the survivors, and returns the removed ids. When
/// `genes` is given, each removed order's gene is redrawn above the largest
/// remaining scheduled gene.
std::vector<int> apply_removal(const Instance& instance, RemovalKind kind,
                               Schedule& schedule, SlackTable& slacks,
                               std::size_t count, Rng& rng, Chromosome* genes);

/// Sorts the bank by descending revenue (or revenue per time unit), ties by
/// ascending id, and fast-inserts each order in turn. Inserted orders leave
/// the bank; when `genes` is given their genes are redrawn strictly between
/// the neighbours' genes.
void apply_insertion(const Instance& instance, InsertionKind kind, Schedule& schedule,
                     SlackTable& slacks, std::vector<int>& bank, Rng& rng,
                     Chromosome* genes);

/// Simulated-annealing acceptance: a better candidate always passes; a worse
/// one passes with probability exp((100/T) * (f_new - f_old)/f_old). With
/// f_old = 0 any nonnegative candidate passes.
bool sa_accept(double current_fitness, double candidate_fitness, double temperature,
               Rng& rng);

/// w_i <- (1 - lambda) w_i + lambda * pi_i / sum(pi), normalized within each
/// operator group; groups whose scores are all zero keep their weights.
/// Scores are reset afterwards.
void update_weights(AlnsState& state, double reaction);

/// Gene reassignment after a removal: uniform in (g_max, 1), or the interval
/// midpoint when g_max already crowds 1.
void reassign_gene_removed(Chromosome& genes, int order, double max_scheduled_gene,
                           Rng& rng);

/// Gene reassignment after an insertion: uniform strictly inside (lower,
/// upper); degenerate intervals fall back to epsilon nudging.
void reassign_gene_inserted(Chromosome& genes, int order, double lower, double upper,
                            Rng& rng);

/// Rewrites genes so the encoding matches the schedule: scheduled orders get
/// the lowest keys in schedule order, banked orders follow above them keeping
/// their relative order. Decode order of the scheduled prefix is preserved.
void repair_encoding(const Instance& instance, const Schedule& schedule,
                     Chromosome& genes);

struct PassOutcome {
    bool accepted = false;
    int score_tier = 0;  // 3 = new best, 2 = improved, 1 = SA-accepted, 0 = reverted
    RemovalKind removal = RemovalKind::Random;
    InsertionKind insertion = InsertionKind::MaxRevenue;
    double fitness_before = 0.0;
    double fitness_after = 0.0;
};

/// One destroy-repair pass. On acceptance the schedule (and chromosome, when
/// given) are replaced by the reworked solution; otherwise both are returned
/// exactly as they came in. Operator scores are updated per the outcome.
PassOutcome alns_pass(const Instance& instance, Schedule& schedule, Chromosome* genes,
                      AlnsState& state, double best_fitness, const AlnsParams& params,
                      Rng& rng);

}  // namespace sparrow
