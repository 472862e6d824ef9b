#pragma once

#include <optional>

#include "sparrow/model.hpp"
#include "sparrow/slack.hpp"

namespace sparrow {

enum class PositionClass {
    PenaltyFree,      // PL1: candidate on time and no new tardiness anywhere
    PenaltyIncurring, // PL2: some penalty appears but total fitness improves
};

struct PositionCandidate {
    int after_position = -1;        // -1 inserts before the first order
    PositionClass cls = PositionClass::PenaltyFree;
    double setup_increase = 0.0;    // meaningful for PL1
    double resulting_fitness = 0.0; // meaningful for PL2
    double start = 0.0;             // candidate's start time at this position
};

/// Evaluates inserting `candidate` after position `after_position` of the
/// schedule (-1 = front). Returns nullopt when the position is pruned or
/// infeasible: the candidate would overrun its deadline, or the successor
/// would need more postponement than its time slack allows. The slack table
/// must be current for the schedule.
std::optional<PositionCandidate> classify_position(const Instance& instance,
                                                   const Schedule& schedule,
                                                   const SlackTable& slacks,
                                                   const Order& candidate,
                                                   int after_position);

struct InsertionEvent {
    std::size_t position = 0;  // index of the candidate in the new sequence
};

/// Tries every position for `order_id` and inserts it at the best one:
/// penalty-free positions win by smallest setup increase, otherwise
/// penalty-incurring positions win by highest resulting fitness, ties broken
/// by the earliest position. Updates starts (push-forward only) and the slack
/// table. Returns nullopt and leaves everything untouched when no position
/// qualifies. Throws when the order is already scheduled.
std::optional<InsertionEvent> fast_insert(const Instance& instance, Schedule& schedule,
                                          SlackTable& slacks, int order_id);

}  // namespace sparrow
