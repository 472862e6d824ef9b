#pragma once

#include <vector>

#include "sparrow/model.hpp"
#include "sparrow/rng.hpp"

namespace sparrow {

/// Gene value used to pin a good pair's follower right after its predecessor.
inline constexpr double kGeneEpsilon = 1e-9;

struct Chromosome {
    std::vector<double> genes;  // one key in [0,1] per order
};

/// End of the scheduling horizon, taken as max_i e_i with start 0.
double scheduling_horizon(const Instance& instance);

/// Probability of choosing the simple decoder: mean processing time over the
/// horizon, clamped to [0.05, 0.95] so both decoders stay reachable.
double decode_ratio(const Instance& instance);

/// Bounded-width initialization: gene i is uniform over the order's window
/// projected onto [0,1], i.e. [b_i/H, e_i/H]. Throws when the horizon is 0.
Chromosome init_chromosome_bounded(const Instance& instance, Rng& rng);

/// Order ids sorted by ascending gene, ties by id.
std::vector<int> gene_order(const Chromosome& chromosome);

/// Greedy decoder: walk orders by ascending gene, start each as early as
/// possible after the current tail, rejecting any that would miss its
/// deadline or whose reward would not be strictly positive.
Schedule simple_decode(const Instance& instance, const Chromosome& chromosome);

/// Insertion decoder: walk orders by ascending gene and fast-insert each into
/// the partial schedule; scheduled orders may be postponed but never dropped.
Schedule complex_decode(const Instance& instance, const Chromosome& chromosome);

/// Hybrid decoder: simple with probability r_d, complex otherwise.
Schedule decode(const Instance& instance, const Chromosome& chromosome, double r_d,
                Rng& rng);

struct GoodPair {
    int preceding = -1;
    int following = -1;
    double unit_reward = 0.0;
};

/// Marks consecutive pairs whose joint reward per unit of elapsed time
/// exceeds the threshold f_g.
std::vector<GoodPair> mark_good_pairs(const Instance& instance, const Schedule& schedule,
                                      double good_pair_threshold);

/// Rewrites each pair's follower gene to the predecessor gene plus epsilon
/// (nudging further on collisions) so the two sort together.
void pin_good_pairs(Chromosome& chromosome, const std::vector<GoodPair>& pairs);

/// Gene-wise crossover. A gene taking part in a good pair whose partner is
/// already placed in the child is inherited from that pair's parent with
/// probability p_g; otherwise the elite gene is chosen with probability
/// rho_e. Works on pinned copies of the parents; the inputs are untouched.
Chromosome intelligent_crossover(const Chromosome& elite, const Chromosome& non_elite,
                                 const std::vector<GoodPair>& elite_pairs,
                                 const std::vector<GoodPair>& non_elite_pairs,
                                 double rho_e, double p_g, Rng& rng);

/// Respaces genes evenly over (0,1): the gene of ascending rank k (ties by
/// id) becomes k/(n+1). The induced decode order is unchanged.
void normalize_keys(Chromosome& chromosome);

}  // namespace sparrow
