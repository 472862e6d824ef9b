#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sparrow {

/// Comparison tolerance for schedule arithmetic on floating-point data.
/// Generated benchmark data is integral, so comparisons there are exact.
inline constexpr double kTol = 1e-9;

struct Order {
    int id = 0;              // index within the owning instance
    double revenue = 0.0;    // r
    double processing = 0.0; // t, strictly positive
    double release = 0.0;    // b
    double due = 0.0;        // d, soft deadline
    double deadline = 0.0;   // e, hard deadline
    double weight = 0.0;     // w, tardiness penalty per time unit
};

/// One scheduling problem: orders plus the sequence-dependent setup matrix.
/// The matrix is (n+1)x(n+1); row and column 0 belong to a dummy origin used
/// only when initial_setup is enabled.
class Instance {
public:
    Instance() = default;
    Instance(std::vector<Order> orders, std::vector<double> setup_flat,
             bool initial_setup = false, std::string label = {});

    int n() const { return static_cast<int>(orders.size()); }

    /// Raw matrix entry; from/to are 0-based order ids, from == -1 addresses
    /// the dummy origin row.
    double setup_time(int from, int to) const {
        return setup_[static_cast<std::size_t>(from + 1) * stride_ +
                      static_cast<std::size_t>(to + 1)];
    }

    /// Setup incurred when `to` is processed right after `from`; from == -1
    /// means `to` is the first order, which costs s_0j only when the dummy
    /// origin is enabled.
    double transition_setup(int from, int to) const {
        if (from < 0 && !initial_setup) return 0.0;
        return setup_time(from, to);
    }

    double total_revenue() const;

    std::string label;
    std::vector<Order> orders;
    bool initial_setup = false;

    const std::vector<double>& setup_flat() const { return setup_; }

private:
    std::vector<double> setup_;
    std::size_t stride_ = 1;
};

/// A (partial) solution: accepted orders in processing sequence with start
/// times. Starts always satisfy the setup and window constraints but are not
/// necessarily the earliest possible ones; insertion only ever pushes
/// successors later.
struct Schedule {
    std::vector<int> sequence;     // accepted order ids, processing order
    std::vector<double> starts;    // parallel to sequence
    std::vector<double> tardiness; // parallel to sequence
    double fitness = 0.0;

    std::size_t size() const { return sequence.size(); }
    bool empty() const { return sequence.empty(); }
    bool contains(int order_id) const;
};

/// Reward of an order started at `start`: revenue minus weighted tardiness.
/// Throws std::invalid_argument when start lies outside [b, e - t].
double order_reward(const Order& order, double start);

/// Unchecked reward; callers guarantee the window.
inline double reward_at(const Order& order, double start) {
    const double tardy = start + order.processing - order.due;
    return order.revenue - order.weight * (tardy > 0.0 ? tardy : 0.0);
}

struct InfeasibleReport {
    int order_id = -1;
    std::size_t position = 0;
};

struct ScheduleBuild {
    std::optional<Schedule> schedule;
    std::optional<InfeasibleReport> infeasible;
    bool feasible() const { return schedule.has_value(); }
};

/// Schedules `sequence` under the earliest-start rule: the first order starts
/// at its release (plus the dummy setup when enabled) and each successor j of
/// i starts at max(b_j, p_i + t_i) + s_ij. Reports the first order whose
/// start would overrun e - t. Throws on duplicate or unknown ids.
ScheduleBuild earliest_start_schedule(const Instance& instance,
                                      std::span<const int> sequence);

enum class ViolationKind {
    Duplicate,
    UnknownOrder,
    SetupGap,
    Window,
    TardinessMismatch,
    FitnessMismatch,
};

struct Violation {
    ViolationKind kind;
    std::size_t position = 0;
    int order_id = -1;
    std::string detail;
};

const char* violation_name(ViolationKind kind);

/// Independent feasibility/consistency check of a schedule against the
/// instance. Returns all violations found; never throws.
std::vector<Violation> validate(const Instance& instance, const Schedule& schedule);

struct Propagation {
    std::size_t last_changed = 0; // highest position whose start moved
    bool any_changed = false;
    bool feasible = true;
    std::size_t violation_pos = 0;
};

/// Pushes start times forward from `begin_pos` until a fixed point: each
/// position's start becomes max(old start, earliest feasible start given its
/// predecessor). Starts are never pulled earlier. Recomputes tardiness for
/// moved entries and the schedule fitness. Reports (instead of throwing) when
/// a moved start overruns its window.
Propagation propagate_starts(const Instance& instance, Schedule& schedule,
                             std::size_t begin_pos);

/// Recomputes fitness and tardiness from the stored starts.
void refresh_objective(const Instance& instance, Schedule& schedule);

}  // namespace sparrow
