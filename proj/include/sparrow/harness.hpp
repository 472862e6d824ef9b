#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparrow/instance_gen.hpp"
#include "sparrow/model.hpp"
#include "sparrow/solver.hpp"

namespace sparrow {

/// Percent gap of a fitness value to a reference upper bound:
/// 100 * (reference - fitness) / reference. Negative when the fitness beats
/// the reference. Throws when reference <= 0.
double gap_percent(double fitness, double reference);

/// Relative gap between two algorithms' gaps: (gap_a - gap_b) / gap_b.
/// Undefined (nullopt) when the baseline gap is 0.
std::optional<double> gap_to_baseline(double gap_a, double gap_b);

struct RunRecord {
    std::string instance;
    std::uint64_t seed = 0;
    int set_tag = 3;
    double fitness = 0.0;
    double wall_seconds = 0.0;
    long generations = 0;
    std::string termination;
    std::optional<double> reference;  // upper bound used for the gap, if any
};

/// One aggregated row: min/avg/max over the per-instance means of a cell.
struct GapRow {
    int set_tag = 3;
    GenSpec cell;        // seed/label fields unused here
    std::string metric;  // "gap_percent" or "fitness"
    double min = 0.0;
    double avg = 0.0;
    double max = 0.0;
};

enum class ReferenceMode { None, Oracle, CrossBest, File };

struct GridSpec {
    std::vector<GenSpec> cells;       // seed fields ignored; derived per instance
    int instances_per_cell = 10;
    int runs_per_instance = 10;
    std::vector<int> parameter_sets = {3};
    std::uint64_t master_seed = 1;
    ReferenceMode reference = ReferenceMode::CrossBest;
    std::string reference_file;       // for ReferenceMode::File
    int oracle_limit = 9;
    int threads = 1;
    std::string out_dir;              // empty: no files, in-memory results only
};

struct GridResult {
    std::vector<GenSpec> instance_specs;   // one per generated instance
    std::vector<RunRecord> runs;           // task order: set-major, then instance, then run
    std::vector<GapRow> gaps;
};

/// Generates the instances, fans the runs out over a small thread pool
/// (results land in task order, so output never depends on scheduling),
/// aggregates with the two-stage scheme — per-instance mean over runs, then
/// min/avg/max over a cell's instances — and, when out_dir is set, writes
/// instances/, runs.csv, timings.csv, gaps.csv, properties.csv and
/// manifest.json. Timings are kept out of the deterministic files.
GridResult run_grid(const GridSpec& spec);

/// Reconstructs the grid of a previous run from its manifest and executes it
/// again into out_dir (empty: in-memory only).
GridResult replay_manifest(const std::string& manifest_path, const std::string& out_dir,
                           int threads = 1);

}  // namespace sparrow
