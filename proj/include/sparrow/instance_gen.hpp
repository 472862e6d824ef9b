#pragma once

#include <cstdint>
#include <string>

#include "sparrow/model.hpp"

namespace sparrow {

enum class Family { Cesaret, Satellite, Commerce, Repairman };

const char* family_name(Family family);
Family family_from_name(const std::string& name);

/// Parameters of one benchmark cell. tau controls how late releases spread
/// over the horizon, range (R) controls due-to-deadline width. Commerce mixes
/// revenue with processing time by q; repairman stretches the horizon by
/// `scale` and generates round(n * scale) orders.
struct GenSpec {
    Family family = Family::Cesaret;
    int n = 25;
    double tau = 0.5;
    double range = 0.5;
    double q = 0.0;      // commerce only, in [0, 1]
    double scale = 1.0;  // repairman only, >= 1
    std::uint64_t seed = 1;
    std::string label;   // defaults to a composed name when empty

    std::string composed_label() const;
};

/// Draws one instance. The same spec and seed always produce the same
/// instance, value for value.
Instance generate(const GenSpec& spec);

}  // namespace sparrow
