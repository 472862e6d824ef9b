#include "sparrow/slack.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sparrow {

namespace {

// Recomputes table entries position..0 given valid entries above.
void back_propagate(const Instance& instance, const Schedule& schedule,
                    SlackTable& table, std::size_t from) {
    const std::size_t len = schedule.size();
    if (len == 0) return;
    for (std::size_t k = std::min(from, len - 1) + 1; k-- > 0;) {
        const Order& o = instance.orders[static_cast<std::size_t>(schedule.sequence[k])];
        const double own_time = o.deadline - o.processing - schedule.starts[k];
        const double own_due = std::max(o.due - o.processing - schedule.starts[k], 0.0);
        if (own_time < -kTol) {
            throw std::invalid_argument("compute_slacks: schedule violates a window");
        }
        if (k + 1 == len) {
            table.gap[k] = std::numeric_limits<double>::infinity();
            table.time_slack[k] = own_time;
            table.due_slack[k] = own_due;
        } else {
            const Order& succ =
                instance.orders[static_cast<std::size_t>(schedule.sequence[k + 1])];
            // Largest delay of k that does not move the successor. The
            // successor may be held by its release time, in which case it
            // absorbs part of the delay; only the chain end + setup matters.
            const double gap = schedule.starts[k + 1] -
                               (schedule.starts[k] + o.processing +
                                instance.transition_setup(o.id, succ.id));
            table.gap[k] = gap;
            table.time_slack[k] = std::min(own_time, gap + table.time_slack[k + 1]);
            table.due_slack[k] = std::min(own_due, gap + table.due_slack[k + 1]);
        }
    }
}

}  // namespace

SlackTable compute_slacks(const Instance& instance, const Schedule& schedule) {
    SlackTable table;
    table.time_slack.resize(schedule.size());
    table.due_slack.resize(schedule.size());
    table.gap.resize(schedule.size());
    if (!schedule.empty()) {
        back_propagate(instance, schedule, table, schedule.size() - 1);
    }
    return table;
}

void update_after_change(const Instance& instance, const Schedule& schedule,
                         SlackTable& table, std::size_t changed_position) {
    if (table.size() != schedule.size()) {
        throw std::invalid_argument("slack table length does not match schedule");
    }
    if (schedule.empty()) return;
    back_propagate(instance, schedule, table, changed_position);
}

}  // namespace sparrow
