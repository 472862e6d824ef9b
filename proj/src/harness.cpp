#include "sparrow/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "sparrow/instance_io.hpp"
#include "sparrow/oracle.hpp"
#include "sparrow/properties.hpp"
#include "sparrow/rng.hpp"

namespace sparrow {

double gap_percent(double fitness, double reference) {
    if (!(reference > 0.0)) throw std::invalid_argument("gap reference must be positive");
    return 100.0 * (reference - fitness) / reference;
}

std::optional<double> gap_to_baseline(double gap_a, double gap_b) {
    if (gap_b == 0.0) return std::nullopt;
    return (gap_a - gap_b) / gap_b;
}

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct PlannedRun {
    std::size_t instance_index;
    int set_tag;
    std::uint64_t seed;
};

std::uint64_t instance_seed(std::uint64_t master, std::size_t cell, int index) {
    return derive_seed(master, cell, static_cast<std::uint64_t>(index), StreamPurpose::Instance);
}

std::uint64_t run_seed(std::uint64_t master, std::size_t instance_index, int set_tag,
                       int run_index) {
    return derive_seed(master, instance_index,
                       (static_cast<std::uint64_t>(set_tag) << 32) |
                           static_cast<std::uint64_t>(run_index),
                       StreamPurpose::Run);
}

std::map<std::string, double> load_reference_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reference file: " + path);
    std::map<std::string, double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        const std::string key = line.substr(0, comma);
        if (key == "instance") continue;  // header
        out[key] = std::stod(line.substr(comma + 1));
    }
    return out;
}

struct ExecutedGrid {
    std::vector<GenSpec> instance_specs;
    std::vector<Instance> instances;
    std::vector<PlannedRun> plan;
    std::vector<RunRecord> records;
};

// Runs the plan on `threads` workers; records land in plan order.
void execute_plan(const std::vector<Instance>& instances, std::vector<PlannedRun>& plan,
                  std::vector<RunRecord>& records, int threads) {
    records.resize(plan.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= plan.size()) return;
            const PlannedRun& r = plan[task];
            const Instance& inst = instances[r.instance_index];
            const SolveResult res = run_parameter_set(inst, r.set_tag, r.seed);
            RunRecord& rec = records[task];
            rec.instance = inst.label;
            rec.seed = r.seed;
            rec.set_tag = r.set_tag;
            rec.fitness = res.best_fitness;
            rec.wall_seconds = res.wall_seconds;
            rec.generations = res.generations;
            rec.termination = termination_name(res.reason);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
}

void attach_references(const GridSpec& spec, const std::vector<Instance>& instances,
                       ExecutedGrid& grid) {
    std::vector<std::optional<double>> reference(instances.size());
    switch (spec.reference) {
        case ReferenceMode::None:
            break;
        case ReferenceMode::Oracle: {
            for (std::size_t i = 0; i < instances.size(); ++i) {
                if (instances[i].n() <= spec.oracle_limit) {
                    reference[i] = exact_solve(instances[i], spec.oracle_limit).optimal;
                } else {
                    std::cerr << "warning: no oracle reference for " << instances[i].label
                              << " (too large); reporting raw fitness\n";
                }
            }
            break;
        }
        case ReferenceMode::CrossBest: {
            std::vector<double> best(instances.size(), 0.0);
            for (std::size_t task = 0; task < grid.plan.size(); ++task) {
                const std::size_t idx = grid.plan[task].instance_index;
                best[idx] = std::max(best[idx], grid.records[task].fitness);
            }
            for (std::size_t i = 0; i < instances.size(); ++i) {
                if (best[i] > 0.0) reference[i] = best[i];
            }
            break;
        }
        case ReferenceMode::File: {
            const auto table = load_reference_file(spec.reference_file);
            for (std::size_t i = 0; i < instances.size(); ++i) {
                const auto it = table.find(instances[i].label);
                if (it != table.end()) reference[i] = it->second;
                else
                    std::cerr << "warning: no reference value for " << instances[i].label
                              << "; reporting raw fitness\n";
            }
            break;
        }
    }
    for (std::size_t task = 0; task < grid.plan.size(); ++task) {
        grid.records[task].reference = reference[grid.plan[task].instance_index];
    }
}

std::vector<GapRow> aggregate(const GridSpec& spec, const ExecutedGrid& grid,
                              std::size_t cells, int per_cell) {
    std::vector<GapRow> rows;
    for (int set_tag : spec.parameter_sets) {
        for (std::size_t cell = 0; cell < cells; ++cell) {
            // Per-instance means first, then min/avg/max across instances.
            std::vector<double> means;
            bool all_have_reference = true;
            for (int k = 0; k < per_cell; ++k) {
                const std::size_t idx = cell * static_cast<std::size_t>(per_cell) +
                                        static_cast<std::size_t>(k);
                double sum = 0.0;
                int count = 0;
                bool have_ref = true;
                for (std::size_t task = 0; task < grid.plan.size(); ++task) {
                    const PlannedRun& r = grid.plan[task];
                    if (r.instance_index != idx || r.set_tag != set_tag) continue;
                    const RunRecord& rec = grid.records[task];
                    if (rec.reference) {
                        sum += gap_percent(rec.fitness, *rec.reference);
                    } else {
                        have_ref = false;
                        sum += rec.fitness;
                    }
                    ++count;
                }
                if (count == 0) continue;
                means.push_back(sum / count);
                all_have_reference = all_have_reference && have_ref;
            }
            if (means.empty()) continue;
            GapRow row;
            row.set_tag = set_tag;
            row.cell = spec.cells[cell];
            row.metric = all_have_reference ? "gap_percent" : "fitness";
            row.min = *std::min_element(means.begin(), means.end());
            row.max = *std::max_element(means.begin(), means.end());
            double total = 0.0;
            for (double m : means) total += m;
            row.avg = total / static_cast<double>(means.size());
            rows.push_back(row);
        }
    }
    return rows;
}

void write_outputs(const GridSpec& spec, const ExecutedGrid& grid,
                   const std::vector<GapRow>& gaps) {
    const fs::path dir(spec.out_dir);
    fs::create_directories(dir / "instances");

    for (std::size_t i = 0; i < grid.instances.size(); ++i) {
        write_instance(grid.instances[i], (dir / "instances" / (grid.instances[i].label + ".oas")).string());
    }

    {
        std::ofstream runs(dir / "runs.csv", std::ios::binary);
        runs << "instance,seed,set,fitness,generations,termination,reference,gap_percent\n";
        for (const RunRecord& rec : grid.records) {
            runs << rec.instance << ',' << rec.seed << ',' << rec.set_tag << ','
                 << format_number(rec.fitness) << ',' << rec.generations << ','
                 << rec.termination << ',';
            if (rec.reference) {
                runs << format_number(*rec.reference) << ','
                     << format_number(gap_percent(rec.fitness, *rec.reference));
            } else {
                runs << ',';
            }
            runs << '\n';
        }
    }
    {
        std::ofstream timings(dir / "timings.csv", std::ios::binary);
        timings << "instance,seed,set,wall_seconds\n";
        for (const RunRecord& rec : grid.records) {
            timings << rec.instance << ',' << rec.seed << ',' << rec.set_tag << ','
                    << format_number(rec.wall_seconds) << '\n';
        }
    }
    {
        std::ofstream out(dir / "gaps.csv", std::ios::binary);
        out << "set,family,n,tau,R,q,c,metric,min,avg,max\n";
        for (const GapRow& row : gaps) {
            out << row.set_tag << ',' << family_name(row.cell.family) << ',' << row.cell.n
                << ',' << format_number(row.cell.tau) << ',' << format_number(row.cell.range)
                << ',' << format_number(row.cell.q) << ',' << format_number(row.cell.scale)
                << ',' << row.metric << ',' << format_number(row.min) << ','
                << format_number(row.avg) << ',' << format_number(row.max) << '\n';
        }
    }
    {
        std::ofstream props(dir / "properties.csv", std::ios::binary);
        props << property_csv_header() << '\n';
        for (const Instance& inst : grid.instances) {
            props << property_csv_row(inst.label, properties(inst)) << '\n';
        }
    }

    json manifest;
    manifest["master_seed"] = spec.master_seed;
    manifest["instances_per_cell"] = spec.instances_per_cell;
    manifest["runs_per_instance"] = spec.runs_per_instance;
    manifest["parameter_sets"] = spec.parameter_sets;
    switch (spec.reference) {
        case ReferenceMode::None: manifest["reference"] = "none"; break;
        case ReferenceMode::Oracle: manifest["reference"] = "oracle"; break;
        case ReferenceMode::CrossBest: manifest["reference"] = "cross"; break;
        case ReferenceMode::File: manifest["reference"] = "file"; break;
    }
    if (!spec.reference_file.empty()) manifest["reference_file"] = spec.reference_file;
    manifest["oracle_limit"] = spec.oracle_limit;
    json cells = json::array();
    for (std::size_t c = 0; c < spec.cells.size(); ++c) {
        const GenSpec& cell = spec.cells[c];
        json jc;
        jc["family"] = family_name(cell.family);
        jc["n"] = cell.n;
        jc["tau"] = cell.tau;
        jc["R"] = cell.range;
        jc["q"] = cell.q;
        jc["c"] = cell.scale;
        json insts = json::array();
        for (int k = 0; k < spec.instances_per_cell; ++k) {
            const std::size_t idx =
                c * static_cast<std::size_t>(spec.instances_per_cell) + static_cast<std::size_t>(k);
            json ji;
            ji["label"] = grid.instances[idx].label;
            ji["seed"] = grid.instance_specs[idx].seed;
            ji["file"] = "instances/" + grid.instances[idx].label + ".oas";
            json seeds = json::array();
            for (int set_tag : spec.parameter_sets) {
                for (int r = 0; r < spec.runs_per_instance; ++r) {
                    seeds.push_back(run_seed(spec.master_seed, idx, set_tag, r));
                }
            }
            ji["run_seeds"] = seeds;
            insts.push_back(ji);
        }
        jc["instances"] = insts;
        cells.push_back(jc);
    }
    manifest["cells"] = cells;

    std::ofstream mf(dir / "manifest.json", std::ios::binary);
    mf << manifest.dump(2) << '\n';
}

}  // namespace

GridResult run_grid(const GridSpec& spec) {
    if (spec.cells.empty()) throw std::invalid_argument("grid has no cells");
    if (spec.instances_per_cell < 1 || spec.runs_per_instance < 1) {
        throw std::invalid_argument("grid needs at least one instance and one run");
    }
    if (spec.reference == ReferenceMode::File && spec.reference_file.empty()) {
        throw std::invalid_argument("reference mode 'file' needs a reference file");
    }

    ExecutedGrid grid;
    for (std::size_t c = 0; c < spec.cells.size(); ++c) {
        for (int k = 0; k < spec.instances_per_cell; ++k) {
            GenSpec inst_spec = spec.cells[c];
            inst_spec.seed = instance_seed(spec.master_seed, c, k);
            inst_spec.label.clear();
            grid.instance_specs.push_back(inst_spec);
            grid.instances.push_back(generate(inst_spec));
        }
    }

    for (int set_tag : spec.parameter_sets) {
        for (std::size_t idx = 0; idx < grid.instances.size(); ++idx) {
            for (int r = 0; r < spec.runs_per_instance; ++r) {
                grid.plan.push_back({idx, set_tag, run_seed(spec.master_seed, idx, set_tag, r)});
            }
        }
    }

    execute_plan(grid.instances, grid.plan, grid.records, spec.threads);
    attach_references(spec, grid.instances, grid);
    const std::vector<GapRow> gaps =
        aggregate(spec, grid, spec.cells.size(), spec.instances_per_cell);

    if (!spec.out_dir.empty()) write_outputs(spec, grid, gaps);

    GridResult result;
    result.instance_specs = std::move(grid.instance_specs);
    result.runs = std::move(grid.records);
    result.gaps = gaps;
    return result;
}

GridResult replay_manifest(const std::string& manifest_path, const std::string& out_dir,
                           int threads) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open manifest: " + manifest_path);
    json manifest = json::parse(in);

    GridSpec spec;
    spec.master_seed = manifest.at("master_seed").get<std::uint64_t>();
    spec.instances_per_cell = manifest.at("instances_per_cell").get<int>();
    spec.runs_per_instance = manifest.at("runs_per_instance").get<int>();
    spec.parameter_sets = manifest.at("parameter_sets").get<std::vector<int>>();
    spec.oracle_limit = manifest.value("oracle_limit", 9);
    const std::string ref = manifest.at("reference").get<std::string>();
    if (ref == "none") spec.reference = ReferenceMode::None;
    else if (ref == "oracle") spec.reference = ReferenceMode::Oracle;
    else if (ref == "cross") spec.reference = ReferenceMode::CrossBest;
    else if (ref == "file") spec.reference = ReferenceMode::File;
    else throw std::runtime_error("manifest: unknown reference mode " + ref);
    if (spec.reference == ReferenceMode::File) {
        spec.reference_file = manifest.at("reference_file").get<std::string>();
    }
    for (const json& jc : manifest.at("cells")) {
        GenSpec cell;
        cell.family = family_from_name(jc.at("family").get<std::string>());
        cell.n = jc.at("n").get<int>();
        cell.tau = jc.at("tau").get<double>();
        cell.range = jc.at("R").get<double>();
        cell.q = jc.at("q").get<double>();
        cell.scale = jc.at("c").get<double>();
        spec.cells.push_back(cell);
    }
    spec.threads = threads;
    spec.out_dir = out_dir;
    return run_grid(spec);
}

}  // namespace sparrow
