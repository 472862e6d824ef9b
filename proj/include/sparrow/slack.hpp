#pragma once

#include "sparrow/model.hpp"

namespace sparrow {

/// Per-position postponement budgets, maintained in parallel with a
/// schedule's sequence.
///
/// time_slack[k]: largest delay of position k that keeps the whole schedule
/// feasible once starts are pushed forward. due_slack[k]: largest delay that
/// adds no tardiness penalty to any order; an already-tardy order has due
/// slack 0. gap[k]: largest delay of position k that leaves the successor's
/// start untouched, i.e. p_{k+1} - (p_k + t_k + s_{k,k+1}); infinity at the
/// last position.
struct SlackTable {
    std::vector<double> time_slack;
    std::vector<double> due_slack;
    std::vector<double> gap;

    std::size_t size() const { return time_slack.size(); }
};

/// Full back-propagation pass over a feasible schedule. Throws
/// std::invalid_argument when some window is already violated.
SlackTable compute_slacks(const Instance& instance, const Schedule& schedule);

/// Refreshes the table after start times changed somewhere in positions
/// [0, changed_position]. Entries above changed_position are untouched by
/// such a change, so the pass recomputes changed_position..0 only. The table
/// must already have the same length as the schedule. Result equals
/// compute_slacks from scratch.
void update_after_change(const Instance& instance, const Schedule& schedule,
                         SlackTable& table, std::size_t changed_position);

}  // namespace sparrow
