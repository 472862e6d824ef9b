#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sparrow/brkga.hpp"
#include "sparrow/model.hpp"
#include "support.hpp"

using namespace sparrow;
using testsupport::make_instance;
using testsupport::OrderSpec;

TEST_CASE("bounded initialization keeps genes inside the window image") {
    // Window [0,10] against horizon 100 -> gene in [0, 0.1].
    const Instance inst = make_instance({{10, 2, 0, 8, 10, 1}, {10, 2, 0, 90, 100, 1}});
    Rng rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const Chromosome c = init_chromosome_bounded(inst, rng);
        CHECK(c.genes[0] >= 0.0);
        CHECK(c.genes[0] <= 0.1);
        CHECK(c.genes[1] >= 0.0);
        CHECK(c.genes[1] <= 1.0);
    }
}

TEST_CASE("bounded initialization matches the uniform law") {
    // 10^4 samples: empirical mean within 3 sigma of (b+e)/2H.
    const Instance inst = make_instance({{10, 2, 20, 58, 60, 1}, {10, 2, 0, 98, 100, 1}});
    Rng rng(2);
    const double H = scheduling_horizon(inst);
    REQUIRE(H == 100.0);
    const int samples = 10000;
    double sum = 0.0, lo = 1.0, hi = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Chromosome c = init_chromosome_bounded(inst, rng);
        sum += c.genes[0];
        lo = std::min(lo, c.genes[0]);
        hi = std::max(hi, c.genes[0]);
    }
    const double width = (60.0 - 20.0) / H;
    const double mean = (20.0 + 60.0) / (2.0 * H);
    const double sigma = width / std::sqrt(12.0) / std::sqrt(samples);
    CHECK(std::abs(sum / samples - mean) <= 3.0 * sigma);
    CHECK(lo >= 20.0 / H);
    CHECK(hi <= 60.0 / H);
}

TEST_CASE("zero horizon is rejected") {
    Instance empty;
    Rng rng(3);
    CHECK_THROWS_AS((void)init_chromosome_bounded(empty, rng), std::invalid_argument);
}

TEST_CASE("simple decode walks the published example") {
    // Orders 1..5 with genes {0.6, 0.2, 0.3, 0.5, 0.7}: try order {2,3,4,1,5};
    // order 4 misses its deadline and is dropped, giving {2, 3, 1, 5}.
    std::vector<OrderSpec> specs(5, OrderSpec{10, 10, 0, 100, 100, 0});
    specs[3].e = 30;  // order "4": earliest end 32 > 30
    specs[3].d = 30;
    const Instance inst = make_instance(specs, 1.0);
    Chromosome c;
    c.genes = {0.6, 0.2, 0.3, 0.5, 0.7};
    const Schedule sched = simple_decode(inst, c);
    CHECK(sched.sequence == std::vector<int>{1, 2, 0, 4});  // ids are 0-based
    CHECK(sched.fitness == doctest::Approx(40.0));
}

TEST_CASE("simple decode rejects non-positive rewards") {
    // Tardy enough that the reward hits exactly zero: must be rejected.
    const Instance inst = make_instance({{10, 5, 0, 5, 15, 1}});
    Chromosome c;
    c.genes = {0.5};
    // start 0, end 5 = d -> reward 10; accepted.
    CHECK(simple_decode(inst, c).size() == 1);

    const Instance tardy = make_instance({{10, 5, 10, 5, 20, 2}});
    // start 10, end 15, tardiness 10, reward 10 - 20 < 0 -> rejected.
    CHECK(simple_decode(tardy, c).empty());
}

TEST_CASE("zero-length chromosome decodes to the empty schedule") {
    Instance empty;
    Chromosome c;
    CHECK(simple_decode(empty, c).empty());
    CHECK(complex_decode(empty, c).empty());
    CHECK(simple_decode(empty, c).fitness == 0.0);
}

TEST_CASE("decode ratio is the processing share of the horizon, clamped") {
    const Instance inst = make_instance({{10, 10, 0, 90, 100, 1}, {10, 30, 0, 90, 100, 1}});
    CHECK(decode_ratio(inst) == doctest::Approx(0.2));  // mean t 20 / horizon 100
    const Instance tiny = make_instance({{10, 1, 0, 900, 1000, 1}});
    CHECK(decode_ratio(tiny) == 0.05);
}

TEST_CASE("complex decode never loses to simple decode on tight early windows") {
    // Averaged over instances; not a per-instance guarantee.
    double simple_total = 0.0;
    double complex_total = 0.0;
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance inst = testsupport::random_instance(15, 11000 + trial, 0.1, 0.1);
        const Chromosome c = init_chromosome_bounded(inst, rng);
        simple_total += simple_decode(inst, c).fitness;
        complex_total += complex_decode(inst, c).fitness;
    }
    CHECK(complex_total >= simple_total);
}

TEST_CASE("complex decode output is always valid") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = testsupport::random_instance(12, 12000 + trial);
        const Chromosome c = init_chromosome_bounded(inst, rng);
        const Schedule sched = complex_decode(inst, c);
        CHECK(validate(inst, sched).empty());
    }
}

TEST_CASE("good pairs are marked by unit reward against the threshold") {
    SUBCASE("rewards 10+10 over span 8 beat f_g = 2") {
        // Two orders, starts 0 and 4, second ends at 8: unit reward 2.5.
        const Instance inst =
            make_instance({{10, 4, 0, 50, 60, 1}, {10, 4, 0, 50, 60, 1}}, 0.0);
        const auto sched = *earliest_start_schedule(inst, std::array{0, 1}).schedule;
        REQUIRE(sched.starts[1] + 4.0 - sched.starts[0] == doctest::Approx(8.0));
        const auto pairs = mark_good_pairs(inst, sched, 2.0);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].preceding == 0);
        CHECK(pairs[0].following == 1);
        CHECK(pairs[0].unit_reward == doctest::Approx(2.5));
    }
    SUBCASE("a long span pushes the unit reward below the threshold") {
        // Span (20 - 10.5)... choose releases so the span is 10.53: unit 1.9.
        const Instance inst =
            make_instance({{10, 4, 0, 50, 60, 1}, {10, 4, 0, 50, 60, 1}}, 0.0);
        auto sched = *earliest_start_schedule(inst, std::array{0, 1}).schedule;
        sched.starts[1] = (10.0 + 10.0) / 1.9 - 4.0;  // span 20/1.9 -> unit exactly 1.9
        refresh_objective(inst, sched);
        const auto pairs = mark_good_pairs(inst, sched, 2.0);
        CHECK(pairs.empty());
    }
    SUBCASE("empty schedule has no pairs") {
        const Instance inst = make_instance({{10, 4, 0, 50, 60, 1}});
        Schedule empty;
        CHECK(mark_good_pairs(inst, empty, 2.0).empty());
    }
}

TEST_CASE("identical parents without good pairs breed an identical child") {
    Rng rng(6);
    const Instance inst = testsupport::random_instance(10, 13000);
    const Chromosome parent = init_chromosome_bounded(inst, rng);
    const Chromosome child = intelligent_crossover(parent, parent, {}, {}, 0.7, 0.95, rng);
    CHECK(child.genes == parent.genes);
}

TEST_CASE("degenerate probabilities reproduce the elite except forced pairs") {
    Chromosome elite;
    elite.genes = {0.1, 0.3, 0.5, 0.7, 0.9};
    Chromosome other;
    other.genes = {0.2, 0.4, 0.6, 0.8, 0.95};
    // Non-elite good pair (2, 3): its follower gene is pinned and, with
    // p_g = 1, forced into the child once gene 2 is present.
    std::vector<GoodPair> other_pairs{{2, 3, 9.9}};
    Rng rng(7);
    const Chromosome child = intelligent_crossover(elite, other, {}, other_pairs, 1.0, 1.0, rng);
    CHECK(child.genes[0] == 0.1);
    CHECK(child.genes[1] == 0.3);
    CHECK(child.genes[2] == 0.5);
    CHECK(child.genes[3] == doctest::Approx(0.6 + 1e-9));  // pinned non-elite gene
    CHECK(child.genes[4] == 0.9);
}

TEST_CASE("crossover draws from the elite with probability rho_e") {
    // 10^4 crossovers x 10 genes, no good pairs: elite share within 3 sigma.
    const std::size_t n = 10;
    Chromosome elite, other;
    for (std::size_t i = 0; i < n; ++i) {
        elite.genes.push_back(0.1);
        other.genes.push_back(0.9);
    }
    Rng rng(8);
    const int crossovers = 10000;
    long from_elite = 0;
    for (int trial = 0; trial < crossovers; ++trial) {
        const Chromosome child = intelligent_crossover(elite, other, {}, {}, 0.7, 0.95, rng);
        for (double g : child.genes) {
            if (g == 0.1) ++from_elite;
        }
    }
    const double total = static_cast<double>(crossovers) * n;
    const double p = static_cast<double>(from_elite) / total;
    const double sigma = std::sqrt(0.7 * 0.3 / total);
    CHECK(std::abs(p - 0.7) <= 3.0 * sigma);
}

TEST_CASE("crossover children stay inside [0,1] and decode cleanly") {
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance inst = testsupport::random_instance(10, 14000 + trial);
        Chromosome a = init_chromosome_bounded(inst, rng);
        Chromosome b = init_chromosome_bounded(inst, rng);
        const Schedule sa = simple_decode(inst, a);
        const Schedule sb = simple_decode(inst, b);
        const Chromosome child =
            intelligent_crossover(a, b, mark_good_pairs(inst, sa, 2.0),
                                  mark_good_pairs(inst, sb, 2.0), 0.7, 0.95, rng);
        for (double g : child.genes) {
            CHECK(g >= 0.0);
            CHECK(g <= 1.0);
        }
        CHECK(validate(inst, simple_decode(inst, child)).empty());
        CHECK(validate(inst, complex_decode(inst, child)).empty());
    }
}

TEST_CASE("normalization spaces keys evenly and keeps the order") {
    Chromosome c;
    c.genes = {0.91, 0.92, 0.93};
    normalize_keys(c);
    CHECK(c.genes == std::vector<double>{0.25, 0.5, 0.75});

    Chromosome spaced;
    spaced.genes = {0.25, 0.5, 0.75};
    normalize_keys(spaced);
    CHECK(spaced.genes == std::vector<double>{0.25, 0.5, 0.75});
}

TEST_CASE("normalization preserves the decode sequence") {
    Rng rng(10);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = testsupport::random_instance(12, 15000 + trial);
        Chromosome c = init_chromosome_bounded(inst, rng);
        const std::vector<int> before = gene_order(c);
        const Schedule decode_before = simple_decode(inst, c);
        normalize_keys(c);
        CHECK(gene_order(c) == before);
        CHECK(simple_decode(inst, c).sequence == decode_before.sequence);
    }
}
