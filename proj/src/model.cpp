#include "sparrow/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sparrow {

Instance::Instance(std::vector<Order> orders_in, std::vector<double> setup_flat,
                   bool initial_setup_in, std::string label_in)
    : label(std::move(label_in)),
      orders(std::move(orders_in)),
      initial_setup(initial_setup_in),
      setup_(std::move(setup_flat)),
      stride_(orders.size() + 1) {
    if (setup_.size() != stride_ * stride_) {
        throw std::invalid_argument("setup matrix size does not match order count");
    }
    for (std::size_t i = 0; i < orders.size(); ++i) {
        orders[i].id = static_cast<int>(i);
    }
}

double Instance::total_revenue() const {
    double sum = 0.0;
    for (const Order& o : orders) sum += o.revenue;
    return sum;
}

bool Schedule::contains(int order_id) const {
    return std::find(sequence.begin(), sequence.end(), order_id) != sequence.end();
}

double order_reward(const Order& order, double start) {
    if (start < order.release - kTol || start > order.deadline - order.processing + kTol) {
        std::ostringstream msg;
        msg << "start " << start << " outside [" << order.release << ", "
            << order.deadline - order.processing << "] for order " << order.id;
        throw std::invalid_argument(msg.str());
    }
    return reward_at(order, start);
}

ScheduleBuild earliest_start_schedule(const Instance& instance,
                                      std::span<const int> sequence) {
    const int n = instance.n();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int id : sequence) {
        if (id < 0 || id >= n) throw std::invalid_argument("unknown order id");
        if (seen[static_cast<std::size_t>(id)]) throw std::invalid_argument("duplicate order id");
        seen[static_cast<std::size_t>(id)] = 1;
    }

    Schedule sched;
    sched.sequence.assign(sequence.begin(), sequence.end());
    sched.starts.resize(sequence.size());
    sched.tardiness.resize(sequence.size());

    int prev = -1;
    double prev_end = 0.0;
    for (std::size_t k = 0; k < sequence.size(); ++k) {
        const Order& o = instance.orders[static_cast<std::size_t>(sequence[k])];
        const double start =
            std::max(o.release, prev_end) + instance.transition_setup(prev, o.id);
        if (start > o.deadline - o.processing + kTol) {
            return {std::nullopt, InfeasibleReport{o.id, k}};
        }
        sched.starts[k] = start;
        sched.tardiness[k] = std::max(start + o.processing - o.due, 0.0);
        sched.fitness += o.revenue - o.weight * sched.tardiness[k];
        prev = o.id;
        prev_end = start + o.processing;
    }
    return {std::move(sched), std::nullopt};
}

const char* violation_name(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Duplicate: return "duplicate";
        case ViolationKind::UnknownOrder: return "unknown-order";
        case ViolationKind::SetupGap: return "setup-gap";
        case ViolationKind::Window: return "window";
        case ViolationKind::TardinessMismatch: return "tardiness-mismatch";
        case ViolationKind::FitnessMismatch: return "fitness-mismatch";
    }
    return "?";
}

std::vector<Violation> validate(const Instance& instance, const Schedule& schedule) {
    std::vector<Violation> out;
    const int n = instance.n();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);

    if (schedule.starts.size() != schedule.sequence.size() ||
        schedule.tardiness.size() != schedule.sequence.size()) {
        out.push_back({ViolationKind::UnknownOrder, 0, -1, "ragged schedule arrays"});
        return out;
    }

    for (std::size_t k = 0; k < schedule.sequence.size(); ++k) {
        const int id = schedule.sequence[k];
        if (id < 0 || id >= n) {
            out.push_back({ViolationKind::UnknownOrder, k, id, "id out of range"});
            return out;
        }
        if (seen[static_cast<std::size_t>(id)]) {
            out.push_back({ViolationKind::Duplicate, k, id, "order appears twice"});
        }
        seen[static_cast<std::size_t>(id)] = 1;
    }

    double fitness = 0.0;
    int prev = -1;
    double prev_end = 0.0;
    for (std::size_t k = 0; k < schedule.sequence.size(); ++k) {
        const Order& o = instance.orders[static_cast<std::size_t>(schedule.sequence[k])];
        const double p = schedule.starts[k];
        const double bound =
            std::max(o.release, prev_end) + instance.transition_setup(prev, o.id);
        if (p < bound - kTol) {
            std::ostringstream msg;
            msg << "start " << p << " below setup-feasible bound " << bound;
            out.push_back({ViolationKind::SetupGap, k, o.id, msg.str()});
        }
        if (p < o.release - kTol || p > o.deadline - o.processing + kTol) {
            std::ostringstream msg;
            msg << "start " << p << " outside [" << o.release << ", "
                << o.deadline - o.processing << "]";
            out.push_back({ViolationKind::Window, k, o.id, msg.str()});
        }
        const double expect_tardy = std::max(p + o.processing - o.due, 0.0);
        if (std::abs(expect_tardy - schedule.tardiness[k]) > kTol) {
            out.push_back({ViolationKind::TardinessMismatch, k, o.id,
                           "stored tardiness disagrees with start time"});
        }
        fitness += o.revenue - o.weight * expect_tardy;
        prev = o.id;
        prev_end = p + o.processing;
    }
    if (std::abs(fitness - schedule.fitness) > kTol) {
        std::ostringstream msg;
        msg << "stored fitness " << schedule.fitness << " != recomputed " << fitness;
        out.push_back({ViolationKind::FitnessMismatch, 0, -1, msg.str()});
    }
    return out;
}

Propagation propagate_starts(const Instance& instance, Schedule& schedule,
                             std::size_t begin_pos) {
    Propagation result;
    result.last_changed = begin_pos == 0 ? 0 : begin_pos - 1;
    for (std::size_t k = begin_pos; k < schedule.size(); ++k) {
        if (k == 0) continue;  // the first order has no predecessor to push it
        const Order& prev = instance.orders[static_cast<std::size_t>(schedule.sequence[k - 1])];
        const Order& cur = instance.orders[static_cast<std::size_t>(schedule.sequence[k])];
        const double prev_end = schedule.starts[k - 1] + prev.processing;
        const double bound = std::max(cur.release, prev_end) +
                             instance.transition_setup(prev.id, cur.id);
        if (bound <= schedule.starts[k] + kTol) break;  // fixed point reached
        schedule.starts[k] = bound;
        schedule.tardiness[k] = std::max(bound + cur.processing - cur.due, 0.0);
        result.last_changed = k;
        result.any_changed = true;
        if (bound > cur.deadline - cur.processing + kTol) {
            result.feasible = false;
            result.violation_pos = k;
            break;
        }
    }
    refresh_objective(instance, schedule);
    return result;
}

void refresh_objective(const Instance& instance, Schedule& schedule) {
    double fitness = 0.0;
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        const Order& o = instance.orders[static_cast<std::size_t>(schedule.sequence[k])];
        schedule.tardiness[k] = std::max(schedule.starts[k] + o.processing - o.due, 0.0);
        fitness += o.revenue - o.weight * schedule.tardiness[k];
    }
    schedule.fitness = fitness;
}

}  // namespace sparrow
