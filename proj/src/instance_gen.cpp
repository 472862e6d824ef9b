#include "sparrow/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "sparrow/rng.hpp"

namespace sparrow {

const char* family_name(Family family) {
    switch (family) {
        case Family::Cesaret: return "cesaret";
        case Family::Satellite: return "satellite";
        case Family::Commerce: return "commerce";
        case Family::Repairman: return "repairman";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "cesaret") return Family::Cesaret;
    if (name == "satellite") return Family::Satellite;
    if (name == "commerce") return Family::Commerce;
    if (name == "repairman") return Family::Repairman;
    throw std::invalid_argument("unknown instance family: " + name);
}

std::string GenSpec::composed_label() const {
    std::ostringstream os;
    os << family_name(family) << "_n" << n << "_tau" << tau << "_R" << range;
    if (family == Family::Commerce) os << "_q" << q;
    if (family == Family::Repairman) os << "_c" << scale;
    os << "_s" << seed;
    return os.str();
}

Instance generate(const GenSpec& spec) {
    if (spec.n <= 0) throw std::invalid_argument("instance size must be positive");
    if (spec.q < 0.0 || spec.q > 1.0) throw std::invalid_argument("q must be in [0, 1]");
    if (spec.scale < 1.0) throw std::invalid_argument("repairman scale must be >= 1");

    double tau = spec.tau;
    double range = spec.range;
    if (spec.family == Family::Satellite) {
        tau = 0.1;
        range = 0.1;
    }

    const int m = spec.family == Family::Repairman
                      ? static_cast<int>(std::llround(spec.n * spec.scale))
                      : spec.n;

    Rng rng(spec.seed);

    std::vector<double> processing(static_cast<std::size_t>(m));
    std::vector<double> base_revenue(static_cast<std::size_t>(m));  // gamma for commerce
    for (int i = 0; i < m; ++i) {
        processing[static_cast<std::size_t>(i)] = static_cast<double>(rng.uniform_int(1, 20));
        base_revenue[static_cast<std::size_t>(i)] = static_cast<double>(rng.uniform_int(1, 20));
    }

    const std::size_t stride = static_cast<std::size_t>(m) + 1;
    std::vector<double> setup(stride * stride, 0.0);
    double s_max = 0.0;
    for (int from = 0; from <= m; ++from) {
        for (int to = 1; to <= m; ++to) {
            if (from == to) continue;
            const double s = static_cast<double>(rng.uniform_int(1, 10));
            setup[static_cast<std::size_t>(from) * stride + static_cast<std::size_t>(to)] = s;
            s_max = std::max(s_max, s);
        }
    }

    double t_total = 0.0;
    for (double t : processing) t_total += t;
    // Repairman stretches the horizon-defining total processing time.
    const double t_used = spec.family == Family::Repairman ? spec.scale * t_total : t_total;

    std::vector<double> release(static_cast<std::size_t>(m));
    const std::int64_t b_hi = std::llround(tau * t_used);
    for (int i = 0; i < m; ++i) {
        release[static_cast<std::size_t>(i)] = static_cast<double>(rng.uniform_int(0, b_hi));
    }

    std::int64_t v_lo = std::llround(t_used * (1.0 - tau - range / 2.0));
    std::int64_t v_hi = std::llround(t_used * (1.0 - tau + range / 2.0));
    if (v_lo > v_hi) {
        std::cerr << "warning: empty slack interval after rounding for " << spec.composed_label()
                  << "; widening by 1\n";
        v_hi = v_lo + 1;
    }

    std::vector<Order> orders(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        Order& o = orders[static_cast<std::size_t>(i)];
        o.id = i;
        o.processing = processing[static_cast<std::size_t>(i)];
        o.release = release[static_cast<std::size_t>(i)];
        const double v = static_cast<double>(rng.uniform_int(v_lo, v_hi));
        o.due = o.release + s_max + std::max(v, o.processing);
        o.deadline = o.due + std::max<double>(1.0, static_cast<double>(std::llround(range * o.processing)));
        if (spec.family == Family::Commerce) {
            o.revenue = (1.0 - spec.q) * base_revenue[static_cast<std::size_t>(i)] +
                        2.0 * spec.q * o.processing;
        } else {
            o.revenue = base_revenue[static_cast<std::size_t>(i)];
        }
        o.weight = o.revenue / (o.deadline - o.due);
    }

    // Every order must be schedulable in isolation; with s_max >= 1 the
    // formulas guarantee it, so this never fires on the families above.
    for (const Order& o : orders) {
        if (o.release + o.processing > o.deadline + kTol) {
            throw std::logic_error("generated order not schedulable in isolation");
        }
    }

    std::string label = spec.label.empty() ? spec.composed_label() : spec.label;
    return Instance(std::move(orders), std::move(setup), false, std::move(label));
}

}  // namespace sparrow
