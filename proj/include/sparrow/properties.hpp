#pragma once

#include <string>

#include "sparrow/model.hpp"

namespace sparrow {

/// The twelve per-instance structural metrics used to relate instance shape
/// to difficulty. Standard deviations are population deviations.
struct PropertyReport {
    double std_setup = 0.0;
    double std_window = 0.0;
    double std_revenue = 0.0;
    double horizon = 0.0;             // max e - min b
    double mean_window = 0.0;
    double congestion_ratio = 0.0;    // sum_i (t_i + min incoming setup) / horizon
    double std_processing = 0.0;
    double mean_conflict_ratio = 0.0; // window overlap with all others / own length
    double std_conflict_ratio = 0.0;
    double setup_window_ratio = 0.0;  // mean setup / mean window
    double process_window_ratio = 0.0;
    double correlation_t_r = 0.0;     // Pearson of (processing, revenue)
};

PropertyReport properties(const Instance& instance);

/// Column names / one row, for CSV reporting.
std::string property_csv_header();
std::string property_csv_row(const std::string& instance_label, const PropertyReport& report);

}  // namespace sparrow
