#include "sparrow/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sparrow {

namespace {

struct Search {
    const Instance& instance;
    bool prune;
    std::vector<int> branch_order;  // static: descending revenue rate
    std::vector<int> current;
    OracleResult result;

    explicit Search(const Instance& inst, bool prune_in)
        : instance(inst), prune(prune_in) {
        branch_order.resize(static_cast<std::size_t>(inst.n()));
        std::iota(branch_order.begin(), branch_order.end(), 0);
        std::sort(branch_order.begin(), branch_order.end(), [&](int a, int b) {
            const Order& oa = inst.orders[static_cast<std::size_t>(a)];
            const Order& ob = inst.orders[static_cast<std::size_t>(b)];
            const double ua = oa.revenue / oa.processing;
            const double ub = ob.revenue / ob.processing;
            if (ua != ub) return ua > ub;
            return a < b;
        });
    }

    void dfs(int last, double last_end, double accrued, double remaining,
             std::uint64_t used_mask) {
        ++result.nodes;
        if (accrued > result.optimal) {
            result.optimal = accrued;
            result.sequence = current;
        }
        if (prune && accrued + remaining <= result.optimal) return;
        for (int id : branch_order) {
            if (used_mask & (1ULL << id)) continue;
            const Order& o = instance.orders[static_cast<std::size_t>(id)];
            const double start =
                std::max(o.release, last_end) + instance.transition_setup(last, id);
            if (start > o.deadline - o.processing + kTol) continue;
            const double reward = reward_at(o, start);
            if (!(reward > 0.0)) continue;  // never helps: it adds nothing and delays others
            current.push_back(id);
            dfs(id, start + o.processing, accrued + reward, remaining - o.revenue,
                used_mask | (1ULL << id));
            current.pop_back();
        }
    }
};

}  // namespace

OracleResult exact_solve(const Instance& instance, int n_limit, bool prune) {
    if (instance.n() > n_limit || instance.n() > 63) {
        throw std::invalid_argument("exact_solve: instance exceeds the size limit");
    }
    Search search(instance, prune);
    search.dfs(-1, 0.0, 0.0, instance.total_revenue(), 0);
    search.result.proven_optimal = true;
    return search.result;
}

}  // namespace sparrow
