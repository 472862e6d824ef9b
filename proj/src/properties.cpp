#include "sparrow/properties.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

#include "sparrow/instance_io.hpp"

namespace sparrow {

namespace {

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double population_std(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double mu = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    const double mx = mean_of(xs);
    const double my = mean_of(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;  // degenerate: no variation
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

PropertyReport properties(const Instance& instance) {
    PropertyReport rep;
    const int n = instance.n();
    if (n == 0) return rep;

    std::vector<double> processing, revenue, window;
    processing.reserve(static_cast<std::size_t>(n));
    for (const Order& o : instance.orders) {
        processing.push_back(o.processing);
        revenue.push_back(o.revenue);
        window.push_back(o.deadline - o.release);
    }

    std::vector<double> setups;
    setups.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) setups.push_back(instance.setup_time(i, j));
        }
    }

    double min_release = std::numeric_limits<double>::infinity();
    double max_deadline = 0.0;
    for (const Order& o : instance.orders) {
        min_release = std::min(min_release, o.release);
        max_deadline = std::max(max_deadline, o.deadline);
    }
    rep.horizon = max_deadline - min_release;

    double load = 0.0;  // processing plus cheapest way to reach each order
    for (int i = 0; i < n; ++i) {
        double min_in = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            if (j != i) min_in = std::min(min_in, instance.setup_time(j, i));
        }
        if (!std::isfinite(min_in)) min_in = 0.0;  // single order
        load += instance.orders[static_cast<std::size_t>(i)].processing + min_in;
    }
    rep.congestion_ratio = rep.horizon > 0.0 ? load / rep.horizon : 0.0;

    std::vector<double> conflict(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const Order& a = instance.orders[static_cast<std::size_t>(i)];
        const double len = a.deadline - a.release;
        if (len <= 0.0) {
            std::cerr << "warning: order " << i << " has a zero-length window; "
                      << "conflict ratio set to 0\n";
            continue;
        }
        double overlap_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const Order& b = instance.orders[static_cast<std::size_t>(j)];
            overlap_sum += std::max(
                0.0, std::min(a.deadline, b.deadline) - std::max(a.release, b.release));
        }
        conflict[static_cast<std::size_t>(i)] = overlap_sum / len;
    }

    rep.std_setup = population_std(setups);
    rep.std_window = population_std(window);
    rep.std_revenue = population_std(revenue);
    rep.mean_window = mean_of(window);
    rep.std_processing = population_std(processing);
    rep.mean_conflict_ratio = mean_of(conflict);
    rep.std_conflict_ratio = population_std(conflict);
    rep.setup_window_ratio = rep.mean_window > 0.0 ? mean_of(setups) / rep.mean_window : 0.0;
    rep.process_window_ratio = rep.mean_window > 0.0 ? mean_of(processing) / rep.mean_window : 0.0;
    rep.correlation_t_r = pearson(processing, revenue);
    return rep;
}

std::string property_csv_header() {
    return "instance,std_setup,std_window,std_revenue,horizon,mean_window,"
           "congestion_ratio,std_processing,mean_conflict_ratio,std_conflict_ratio,"
           "setup_window_ratio,process_window_ratio,correlation_t_r";
}

std::string property_csv_row(const std::string& instance_label, const PropertyReport& r) {
    std::ostringstream os;
    os << instance_label;
    for (double v : {r.std_setup, r.std_window, r.std_revenue, r.horizon, r.mean_window,
                     r.congestion_ratio, r.std_processing, r.mean_conflict_ratio,
                     r.std_conflict_ratio, r.setup_window_ratio, r.process_window_ratio,
                     r.correlation_t_r}) {
        os << ',' << format_number(v);
    }
    return os.str();
}

}  // namespace sparrow
