#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "sparrow/model.hpp"
#include "sparrow/oracle.hpp"
#include "support.hpp"

using namespace sparrow;
using testsupport::make_instance;
using testsupport::OrderSpec;

TEST_CASE("single schedulable order yields its full revenue") {
    const Instance inst = make_instance({{13, 3, 5, 10, 12, 2}});
    const OracleResult result = exact_solve(inst);
    CHECK(result.optimal == doctest::Approx(13.0));
    CHECK(result.sequence == std::vector<int>{0});
    CHECK(result.proven_optimal);
}

TEST_CASE("mutually exclusive orders force the richer choice") {
    // Identical tight windows; only one fits.
    const Instance inst =
        make_instance({{5, 10, 0, 10, 10, 1}, {9, 10, 0, 10, 10, 1}}, 5.0);
    const OracleResult result = exact_solve(inst);
    CHECK(result.optimal == doctest::Approx(9.0));
    CHECK(result.sequence == std::vector<int>{1});
}

TEST_CASE("oracle refuses oversized instances") {
    const Instance inst = testsupport::random_instance(12, 5);
    CHECK_THROWS_AS((void)exact_solve(inst, 9), std::invalid_argument);
}

TEST_CASE("pruned and unpruned search agree") {
    for (int trial = 0; trial < 15; ++trial) {
        const Instance inst = testsupport::random_instance(7, 22000 + trial,
                                                           0.1 + 0.1 * (trial % 8), 0.5);
        const OracleResult pruned = exact_solve(inst, 9, true);
        const OracleResult full = exact_solve(inst, 9, false);
        CHECK(pruned.optimal == doctest::Approx(full.optimal));
        CHECK(pruned.nodes <= full.nodes);
    }
}

TEST_CASE("the optimal sequence re-evaluates to the reported fitness") {
    for (int trial = 0; trial < 20; ++trial) {
        const Instance inst = testsupport::random_instance(7, 23000 + trial);
        const OracleResult result = exact_solve(inst);
        const auto built = earliest_start_schedule(inst, result.sequence);
        REQUIRE(built.feasible());
        CHECK(built.schedule->fitness == doctest::Approx(result.optimal));
        CHECK(validate(inst, *built.schedule).empty());
    }
}

TEST_CASE("earliest-start dominates delayed start assignments") {
    // Random delayed variants of every sequence on tiny instances never beat
    // the earliest-start fitness; this licenses searching sequences only.
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = testsupport::random_instance(3, 24000 + trial, 0.3, 0.7);
        const std::vector<std::vector<int>> sequences{
            {0}, {1}, {2}, {0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1},
            {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& seq : sequences) {
            const auto built = earliest_start_schedule(inst, seq);
            if (!built.feasible()) continue;
            const Schedule& es = *built.schedule;
            for (int sample = 0; sample < 20; ++sample) {
                Schedule delayed = es;
                for (std::size_t k = 0; k < delayed.size(); ++k) {
                    delayed.starts[k] += std::floor(rng.uniform() * 5.0);
                }
                // Re-propagate so the delays respect setups, then check.
                for (std::size_t k = 1; k < delayed.size(); ++k) {
                    const Order& prev = inst.orders[static_cast<std::size_t>(
                        delayed.sequence[k - 1])];
                    const Order& cur =
                        inst.orders[static_cast<std::size_t>(delayed.sequence[k])];
                    delayed.starts[k] = std::max(
                        delayed.starts[k],
                        std::max(cur.release,
                                 delayed.starts[k - 1] + prev.processing) +
                            inst.transition_setup(prev.id, cur.id));
                }
                refresh_objective(inst, delayed);
                if (!validate(inst, delayed).empty()) continue;
                CHECK(delayed.fitness <= es.fitness + kTol);
            }
        }
    }
}

TEST_CASE("oracle upper-bounds random feasible schedules") {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const Instance inst = testsupport::random_instance(6, 25000 + trial);
        const OracleResult result = exact_solve(inst);
        for (int s = 0; s < 20; ++s) {
            const Schedule sched = testsupport::random_feasible_schedule(inst, rng);
            CHECK(sched.fitness <= result.optimal + kTol);
        }
    }
}

TEST_CASE("node counting is monotone in instance size") {
    const Instance small = testsupport::random_instance(4, 26000);
    const Instance big = testsupport::random_instance(7, 26000);
    CHECK(exact_solve(small).nodes >= 1);
    CHECK(exact_solve(big, 9, false).nodes > exact_solve(small, 9, false).nodes);
}
