#include "sparrow/brkga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sparrow/insertion.hpp"
#include "sparrow/slack.hpp"

namespace sparrow {

double scheduling_horizon(const Instance& instance) {
    double h = 0.0;
    for (const Order& o : instance.orders) h = std::max(h, o.deadline);
    return h;
}

double decode_ratio(const Instance& instance) {
    const double horizon = scheduling_horizon(instance);
    if (horizon <= 0.0 || instance.n() == 0) return 0.05;
    double mean_t = 0.0;
    for (const Order& o : instance.orders) mean_t += o.processing;
    mean_t /= instance.n();
    return std::clamp(mean_t / horizon, 0.05, 0.95);
}

Chromosome init_chromosome_bounded(const Instance& instance, Rng& rng) {
    const double horizon = scheduling_horizon(instance);
    if (horizon <= 0.0) throw std::invalid_argument("scheduling horizon is zero");
    Chromosome c;
    c.genes.reserve(static_cast<std::size_t>(instance.n()));
    for (const Order& o : instance.orders) {
        c.genes.push_back(rng.uniform(o.release / horizon, o.deadline / horizon));
    }
    return c;
}

std::vector<int> gene_order(const Chromosome& chromosome) {
    std::vector<int> order(chromosome.genes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ga = chromosome.genes[static_cast<std::size_t>(a)];
        const double gb = chromosome.genes[static_cast<std::size_t>(b)];
        if (ga != gb) return ga < gb;
        return a < b;
    });
    return order;
}

Schedule simple_decode(const Instance& instance, const Chromosome& chromosome) {
    Schedule sched;
    int prev = -1;
    double prev_end = 0.0;
    for (int id : gene_order(chromosome)) {
        const Order& o = instance.orders[static_cast<std::size_t>(id)];
        const double start =
            std::max(o.release, prev_end) + instance.transition_setup(prev, o.id);
        if (start + o.processing > o.deadline + kTol) continue;
        const double reward = reward_at(o, start);
        if (!(reward > 0.0)) continue;
        sched.sequence.push_back(id);
        sched.starts.push_back(start);
        sched.tardiness.push_back(std::max(start + o.processing - o.due, 0.0));
        sched.fitness += reward;
        prev = id;
        prev_end = start + o.processing;
    }
    return sched;
}

Schedule complex_decode(const Instance& instance, const Chromosome& chromosome) {
    Schedule sched;
    SlackTable slacks;
    for (int id : gene_order(chromosome)) {
        fast_insert(instance, sched, slacks, id);
    }
    return sched;
}

Schedule decode(const Instance& instance, const Chromosome& chromosome, double r_d,
                Rng& rng) {
    if (rng.uniform() < r_d) return simple_decode(instance, chromosome);
    return complex_decode(instance, chromosome);
}

std::vector<GoodPair> mark_good_pairs(const Instance& instance, const Schedule& schedule,
                                      double good_pair_threshold) {
    std::vector<GoodPair> pairs;
    for (std::size_t k = 0; k + 1 < schedule.size(); ++k) {
        const Order& a = instance.orders[static_cast<std::size_t>(schedule.sequence[k])];
        const Order& b = instance.orders[static_cast<std::size_t>(schedule.sequence[k + 1])];
        const double span =
            schedule.starts[k + 1] + b.processing - schedule.starts[k];
        if (span <= 0.0) continue;
        const double unit = (reward_at(a, schedule.starts[k]) +
                             reward_at(b, schedule.starts[k + 1])) /
                            span;
        if (unit > good_pair_threshold) {
            pairs.push_back({a.id, b.id, unit});
        }
    }
    return pairs;
}

void pin_good_pairs(Chromosome& chromosome, const std::vector<GoodPair>& pairs) {
    for (const GoodPair& pair : pairs) {
        double target = chromosome.genes[static_cast<std::size_t>(pair.preceding)] + kGeneEpsilon;
        bool collides = true;
        while (collides) {
            collides = false;
            for (std::size_t i = 0; i < chromosome.genes.size(); ++i) {
                if (static_cast<int>(i) != pair.following && chromosome.genes[i] == target) {
                    target += kGeneEpsilon;
                    collides = true;
                    break;
                }
            }
        }
        chromosome.genes[static_cast<std::size_t>(pair.following)] = std::min(target, 1.0);
    }
}

Chromosome intelligent_crossover(const Chromosome& elite, const Chromosome& non_elite,
                                 const std::vector<GoodPair>& elite_pairs,
                                 const std::vector<GoodPair>& non_elite_pairs,
                                 double rho_e, double p_g, Rng& rng) {
    const std::size_t n = elite.genes.size();
    if (non_elite.genes.size() != n) {
        throw std::invalid_argument("crossover parents differ in length");
    }

    Chromosome pinned_elite = elite;
    pin_good_pairs(pinned_elite, elite_pairs);
    Chromosome pinned_non = non_elite;
    pin_good_pairs(pinned_non, non_elite_pairs);

    // partner[i]: the other half of a good pair containing i, or -1. When an
    // order sits in two pairs (as follower of one and leader of the next) we
    // keep the partner with the smaller index, which is the one that can
    // already be present in the child.
    auto partners = [n](const std::vector<GoodPair>& pairs) {
        std::vector<int> partner(n, -1);
        for (const GoodPair& p : pairs) {
            auto note = [&](int self, int other) {
                int& slot = partner[static_cast<std::size_t>(self)];
                if (slot < 0 || other < slot) slot = other;
            };
            note(p.preceding, p.following);
            note(p.following, p.preceding);
        }
        return partner;
    };
    const std::vector<int> elite_partner = partners(elite_pairs);
    const std::vector<int> non_partner = partners(non_elite_pairs);

    Chromosome child;
    child.genes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int pe = elite_partner[i];
        const int pn = non_partner[i];
        double gene;
        if (pe >= 0 && static_cast<std::size_t>(pe) < i) {
            gene = rng.uniform() < p_g ? pinned_elite.genes[i] : pinned_non.genes[i];
        } else if (pn >= 0 && static_cast<std::size_t>(pn) < i) {
            gene = rng.uniform() < p_g ? pinned_non.genes[i] : pinned_elite.genes[i];
        } else {
            gene = rng.uniform() < rho_e ? pinned_elite.genes[i] : pinned_non.genes[i];
        }
        child.genes[i] = std::clamp(gene, 0.0, 1.0);
    }
    return child;
}

void normalize_keys(Chromosome& chromosome) {
    const std::size_t n = chromosome.genes.size();
    if (n == 0) return;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ga = chromosome.genes[static_cast<std::size_t>(a)];
        const double gb = chromosome.genes[static_cast<std::size_t>(b)];
        if (ga != gb) return ga < gb;
        return a < b;
    });
    for (std::size_t rank = 0; rank < n; ++rank) {
        chromosome.genes[static_cast<std::size_t>(order[rank])] =
            static_cast<double>(rank + 1) / static_cast<double>(n + 1);
    }
}

}  // namespace sparrow
