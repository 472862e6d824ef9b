#pragma once

#include <cstdint>
#include <vector>

#include "sparrow/model.hpp"

namespace sparrow {

struct OracleResult {
    double optimal = 0.0;
    std::vector<int> sequence;  // one optimal accepted sequence
    std::uint64_t nodes = 0;
    bool proven_optimal = true;
};

/// Exhaustive search over accepted subsets and their permutations under
/// earliest-start evaluation. Earliest-start dominance makes searching
/// sequences sufficient; branches are cut when the accrued reward plus all
/// remaining revenues cannot beat the incumbent. Exponential: refuses
/// instances larger than n_limit.
OracleResult exact_solve(const Instance& instance, int n_limit = 9, bool prune = true);

}  // namespace sparrow
