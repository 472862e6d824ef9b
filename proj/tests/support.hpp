// Shared helpers for the test suites: compact instance builders and the
// independent re-evaluation oracles the randomized checks compare against.
#pragma once

#include <algorithm>
#include <vector>

#include "sparrow/instance_gen.hpp"
#include "sparrow/model.hpp"
#include "sparrow/rng.hpp"

namespace testsupport {

struct OrderSpec {
    double r, t, b, d, e, w;
};

/// Instance with a uniform setup time between every pair (dummy row included).
inline sparrow::Instance make_instance(const std::vector<OrderSpec>& specs,
                                       double setup = 1.0, bool initial_setup = false) {
    std::vector<sparrow::Order> orders;
    for (const OrderSpec& s : specs) {
        sparrow::Order o;
        o.revenue = s.r;
        o.processing = s.t;
        o.release = s.b;
        o.due = s.d;
        o.deadline = s.e;
        o.weight = s.w;
        orders.push_back(o);
    }
    const std::size_t stride = specs.size() + 1;
    std::vector<double> matrix(stride * stride, 0.0);
    for (std::size_t i = 0; i < stride; ++i) {
        for (std::size_t j = 1; j < stride; ++j) {
            if (i != j) matrix[i * stride + j] = setup;
        }
    }
    return sparrow::Instance(std::move(orders), std::move(matrix), initial_setup, "test");
}

/// Same, with an explicit (n+1)x(n+1) matrix given row-major.
inline sparrow::Instance make_instance(const std::vector<OrderSpec>& specs,
                                       std::vector<double> matrix,
                                       bool initial_setup = false) {
    std::vector<sparrow::Order> orders;
    for (const OrderSpec& s : specs) {
        sparrow::Order o;
        o.revenue = s.r;
        o.processing = s.t;
        o.release = s.b;
        o.due = s.d;
        o.deadline = s.e;
        o.weight = s.w;
        orders.push_back(o);
    }
    return sparrow::Instance(std::move(orders), std::move(matrix), initial_setup, "test");
}

/// Small random benchmark-style instance.
inline sparrow::Instance random_instance(int n, std::uint64_t seed, double tau = 0.5,
                                         double range = 0.5) {
    sparrow::GenSpec spec;
    spec.n = n;
    spec.tau = tau;
    spec.range = range;
    spec.seed = seed;
    return sparrow::generate(spec);
}

/// Feasible schedule over a random subset of orders: a random permutation is
/// decoded earliest-start, dropping orders that will not fit.
inline sparrow::Schedule random_feasible_schedule(const sparrow::Instance& instance,
                                                  sparrow::Rng& rng) {
    std::vector<int> perm(static_cast<std::size_t>(instance.n()));
    for (int i = 0; i < instance.n(); ++i) perm[static_cast<std::size_t>(i)] = i;
    for (std::size_t k = perm.size(); k > 1; --k) {
        std::swap(perm[k - 1], perm[rng.index(k)]);
    }
    sparrow::Schedule sched;
    int prev = -1;
    double prev_end = 0.0;
    for (int id : perm) {
        const sparrow::Order& o = instance.orders[static_cast<std::size_t>(id)];
        const double start =
            std::max(o.release, prev_end) + instance.transition_setup(prev, id);
        if (start > o.deadline - o.processing) continue;
        if (rng.uniform() < 0.2) continue;  // keep some orders out on purpose
        sched.sequence.push_back(id);
        sched.starts.push_back(start);
        sched.tardiness.push_back(std::max(start + o.processing - o.due, 0.0));
        prev = id;
        prev_end = start + o.processing;
    }
    sparrow::refresh_objective(instance, sched);
    return sched;
}

/// Independent delay oracle: postpones position `pos` by `delta`, pushes all
/// successors forward the way the scheduler would, and reports feasibility
/// plus the resulting fitness. Used to cross-check slack tables.
struct DelayOutcome {
    bool feasible;
    double fitness;
};

inline DelayOutcome delay_and_propagate(const sparrow::Instance& instance,
                                        sparrow::Schedule schedule, std::size_t pos,
                                        double delta) {
    schedule.starts[pos] += delta;
    const sparrow::Order& moved =
        instance.orders[static_cast<std::size_t>(schedule.sequence[pos])];
    if (schedule.starts[pos] > moved.deadline - moved.processing + sparrow::kTol) {
        return {false, 0.0};
    }
    const sparrow::Propagation prop =
        sparrow::propagate_starts(instance, schedule, pos + 1);
    return {prop.feasible, schedule.fitness};
}

}  // namespace testsupport
