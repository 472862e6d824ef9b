#include "sparrow/insertion.hpp"

#include <algorithm>
#include <stdexcept>

namespace sparrow {

namespace {

// Fitness of the schedule with `candidate` placed after `after_position` at
// `cand_start`, evaluated by exact forward re-propagation of the suffix.
// Assumes feasibility was already established via the successor's time slack.
double fitness_with_insertion(const Instance& instance, const Schedule& schedule,
                              const Order& candidate, int after_position,
                              double cand_start) {
    double fitness = schedule.fitness + reward_at(candidate, cand_start);
    int prev_id = candidate.id;
    double prev_end = cand_start + candidate.processing;
    for (std::size_t k = static_cast<std::size_t>(after_position + 1); k < schedule.size(); ++k) {
        const Order& o = instance.orders[static_cast<std::size_t>(schedule.sequence[k])];
        const double bound =
            std::max(o.release, prev_end) + instance.transition_setup(prev_id, o.id);
        if (bound <= schedule.starts[k] + kTol) break;  // suffix unchanged from here on
        // Replace the order's old reward by the reward at the pushed start.
        fitness += reward_at(o, bound) - reward_at(o, schedule.starts[k]);
        prev_id = o.id;
        prev_end = bound + o.processing;
    }
    return fitness;
}

}  // namespace

std::optional<PositionCandidate> classify_position(const Instance& instance,
                                                   const Schedule& schedule,
                                                   const SlackTable& slacks,
                                                   const Order& candidate,
                                                   int after_position) {
    const std::size_t len = schedule.size();
    int prev_id = -1;
    double prev_end = 0.0;
    if (after_position >= 0) {
        const Order& prev =
            instance.orders[static_cast<std::size_t>(schedule.sequence[static_cast<std::size_t>(after_position)])];
        // Cheap overlap prune: give up when the candidate's deadline does not
        // reach past the scheduled order's release.
        if (!(candidate.deadline > prev.release)) return std::nullopt;
        prev_id = prev.id;
        prev_end = schedule.starts[static_cast<std::size_t>(after_position)] + prev.processing;
    }

    const double start = std::max(candidate.release, prev_end) +
                         instance.transition_setup(prev_id, candidate.id);
    const double end = start + candidate.processing;  // t1
    if (end > candidate.deadline + kTol) return std::nullopt;

    const std::size_t succ_pos = static_cast<std::size_t>(after_position + 1);
    double postponement = 0.0;  // t2
    double succ_setup_old = 0.0;
    double succ_setup_new = 0.0;
    if (succ_pos < len) {
        const Order& succ =
            instance.orders[static_cast<std::size_t>(schedule.sequence[succ_pos])];
        succ_setup_old = instance.transition_setup(prev_id, succ.id);
        succ_setup_new = instance.transition_setup(candidate.id, succ.id);
        const double bound = std::max(succ.release, end) + succ_setup_new;
        postponement = std::max(bound - schedule.starts[succ_pos], 0.0);
        if (postponement > slacks.time_slack[succ_pos] + kTol) return std::nullopt;
    }

    PositionCandidate out;
    out.after_position = after_position;
    out.start = start;
    const bool on_time = end <= candidate.due + kTol;
    const bool penalty_free_suffix =
        succ_pos >= len || postponement <= slacks.due_slack[succ_pos] + kTol;
    if (on_time && penalty_free_suffix) {
        out.cls = PositionClass::PenaltyFree;
        out.setup_increase = instance.transition_setup(prev_id, candidate.id) +
                             succ_setup_new - succ_setup_old;
        return out;
    }

    const double new_fitness =
        fitness_with_insertion(instance, schedule, candidate, after_position, start);
    if (new_fitness > schedule.fitness + kTol) {
        out.cls = PositionClass::PenaltyIncurring;
        out.resulting_fitness = new_fitness;
        return out;
    }
    return std::nullopt;
}

std::optional<InsertionEvent> fast_insert(const Instance& instance, Schedule& schedule,
                                          SlackTable& slacks, int order_id) {
    if (order_id < 0 || order_id >= instance.n()) {
        throw std::invalid_argument("fast_insert: unknown order id");
    }
    if (schedule.contains(order_id)) {
        throw std::invalid_argument("fast_insert: order already scheduled");
    }
    const Order& candidate = instance.orders[static_cast<std::size_t>(order_id)];

    std::optional<PositionCandidate> best_free;
    std::optional<PositionCandidate> best_paid;
    for (int pos = -1; pos < static_cast<int>(schedule.size()); ++pos) {
        const auto cand = classify_position(instance, schedule, slacks, candidate, pos);
        if (!cand) continue;
        if (cand->cls == PositionClass::PenaltyFree) {
            if (!best_free || cand->setup_increase < best_free->setup_increase - kTol) {
                best_free = cand;
            }
        } else if (!best_paid ||
                   cand->resulting_fitness > best_paid->resulting_fitness + kTol) {
            best_paid = cand;
        }
    }

    const std::optional<PositionCandidate>& chosen = best_free ? best_free : best_paid;
    if (!chosen) return std::nullopt;

    const std::size_t at = static_cast<std::size_t>(chosen->after_position + 1);
    schedule.sequence.insert(schedule.sequence.begin() + static_cast<std::ptrdiff_t>(at), order_id);
    schedule.starts.insert(schedule.starts.begin() + static_cast<std::ptrdiff_t>(at), chosen->start);
    schedule.tardiness.insert(schedule.tardiness.begin() + static_cast<std::ptrdiff_t>(at), 0.0);

    const Propagation prop = propagate_starts(instance, schedule, at + 1);
    if (!prop.feasible) {
        // The slack gate guarantees this cannot happen; treat it as a logic
        // error rather than silently keeping a broken schedule.
        throw std::logic_error("fast_insert: propagation left the schedule infeasible");
    }

    slacks.time_slack.insert(slacks.time_slack.begin() + static_cast<std::ptrdiff_t>(at), 0.0);
    slacks.due_slack.insert(slacks.due_slack.begin() + static_cast<std::ptrdiff_t>(at), 0.0);
    slacks.gap.insert(slacks.gap.begin() + static_cast<std::ptrdiff_t>(at), 0.0);
    update_after_change(instance, schedule, slacks, std::max(prop.last_changed, at));

    return InsertionEvent{at};
}

}  // namespace sparrow
