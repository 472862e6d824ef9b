#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sparrow/harness.hpp"
#include "support.hpp"

using namespace sparrow;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

GridSpec tiny_grid(std::uint64_t seed) {
    GridSpec spec;
    GenSpec cell;
    cell.n = 6;
    cell.tau = 0.5;
    cell.range = 0.5;
    spec.cells.push_back(cell);
    cell.tau = 0.1;
    spec.cells.push_back(cell);
    spec.instances_per_cell = 2;
    spec.runs_per_instance = 2;
    spec.parameter_sets = {3};
    spec.master_seed = seed;
    spec.reference = ReferenceMode::Oracle;
    return spec;
}

}  // namespace

TEST_CASE("gap arithmetic") {
    CHECK(gap_percent(100.0, 100.0) == doctest::Approx(0.0));
    CHECK(gap_percent(90.0, 100.0) == doctest::Approx(10.0));
    CHECK(gap_percent(104.09, 100.0) == doctest::Approx(-4.09));  // beating the reference
    CHECK_THROWS_AS((void)gap_percent(50.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)gap_percent(50.0, -1.0), std::invalid_argument);
}

TEST_CASE("gap-to-baseline ratios") {
    CHECK(*gap_to_baseline(5.0, 5.0) == doctest::Approx(0.0));
    CHECK(*gap_to_baseline(10.0, 5.0) == doctest::Approx(1.0));
    CHECK(*gap_to_baseline(2.0, 5.0) < 0.0);  // baseline beaten
    CHECK(!gap_to_baseline(2.0, 0.0).has_value());
}

TEST_CASE("a one-instance one-run grid has min = avg = max") {
    GridSpec spec;
    GenSpec cell;
    cell.n = 6;
    spec.cells.push_back(cell);
    spec.instances_per_cell = 1;
    spec.runs_per_instance = 1;
    spec.master_seed = 3;
    spec.reference = ReferenceMode::Oracle;
    const GridResult result = run_grid(spec);
    REQUIRE(result.gaps.size() == 1);
    CHECK(result.gaps[0].min == doctest::Approx(result.gaps[0].avg));
    CHECK(result.gaps[0].avg == doctest::Approx(result.gaps[0].max));
    CHECK(result.gaps[0].metric == "gap_percent");
}

TEST_CASE("oracle-referenced gaps are never negative") {
    const GridResult result = run_grid(tiny_grid(11));
    REQUIRE(!result.runs.empty());
    for (const RunRecord& rec : result.runs) {
        REQUIRE(rec.reference.has_value());
        CHECK(gap_percent(rec.fitness, *rec.reference) >= -1e-9);
    }
    for (const GapRow& row : result.gaps) {
        CHECK(row.min <= row.avg + 1e-12);
        CHECK(row.avg <= row.max + 1e-12);
        CHECK(row.min >= -1e-9);
    }
}

TEST_CASE("two-stage aggregation: instance means first, then cell spread") {
    const GridResult result = run_grid(tiny_grid(12));
    // Recompute by hand for cell 0.
    std::vector<double> means;
    for (int inst_idx = 0; inst_idx < 2; ++inst_idx) {
        double sum = 0.0;
        int count = 0;
        for (const RunRecord& rec : result.runs) {
            if (rec.instance == result.instance_specs[static_cast<std::size_t>(inst_idx)]
                                    .composed_label()) {
                sum += gap_percent(rec.fitness, *rec.reference);
                ++count;
            }
        }
        REQUIRE(count == 2);
        means.push_back(sum / count);
    }
    const GapRow& row = result.gaps[0];
    CHECK(row.min == doctest::Approx(std::min(means[0], means[1])));
    CHECK(row.max == doctest::Approx(std::max(means[0], means[1])));
    CHECK(row.avg == doctest::Approx((means[0] + means[1]) / 2.0));
}

TEST_CASE("cross-config reference uses the best fitness over all runs") {
    GridSpec spec = tiny_grid(13);
    spec.reference = ReferenceMode::CrossBest;
    spec.parameter_sets = {3, 5};
    const GridResult result = run_grid(spec);
    for (const RunRecord& rec : result.runs) {
        REQUIRE(rec.reference.has_value());
        CHECK(rec.fitness <= *rec.reference + 1e-9);
    }
    // At least one run per instance attains the reference exactly.
    for (const GenSpec& inst : result.instance_specs) {
        bool attained = false;
        for (const RunRecord& rec : result.runs) {
            if (rec.instance == inst.composed_label() &&
                std::abs(rec.fitness - *rec.reference) <= 1e-9) {
                attained = true;
            }
        }
        CHECK(attained);
    }
}

TEST_CASE("reference file mode reads instance,value pairs") {
    const fs::path dir = fs::temp_directory_path() / "sparrow_test_ref";
    fs::create_directories(dir);
    GridSpec spec = tiny_grid(14);

    // First pass: discover labels, write a reference file giving each
    // instance the value 1000.
    const GridResult probe = run_grid(spec);
    const fs::path ref_file = dir / "refs.csv";
    {
        std::ofstream out(ref_file);
        out << "instance,value\n";
        for (const GenSpec& inst : probe.instance_specs) {
            out << inst.composed_label() << ",1000\n";
        }
    }
    spec.reference = ReferenceMode::File;
    spec.reference_file = ref_file.string();
    const GridResult result = run_grid(spec);
    for (const RunRecord& rec : result.runs) {
        REQUIRE(rec.reference.has_value());
        CHECK(*rec.reference == 1000.0);
    }
    fs::remove_all(dir);
}

TEST_CASE("grid outputs are byte-identical across reruns and replay") {
    const fs::path base = fs::temp_directory_path() / "sparrow_test_grid";
    fs::remove_all(base);
    const fs::path dir_a = base / "a";
    const fs::path dir_b = base / "b";
    const fs::path dir_c = base / "c";

    GridSpec spec = tiny_grid(15);
    spec.out_dir = dir_a.string();
    run_grid(spec);
    spec.out_dir = dir_b.string();
    run_grid(spec);

    for (const char* name : {"runs.csv", "gaps.csv", "properties.csv", "manifest.json"}) {
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }

    // Replaying the manifest reproduces every record bit-exactly.
    replay_manifest((dir_a / "manifest.json").string(), dir_c.string());
    for (const char* name : {"runs.csv", "gaps.csv", "manifest.json"}) {
        CHECK(slurp(dir_a / name) == slurp(dir_c / name));
    }

    // Instance files written by the grid round-trip byte-exactly too.
    for (const auto& entry : fs::directory_iterator(dir_a / "instances")) {
        const fs::path other = dir_c / "instances" / entry.path().filename();
        CHECK(slurp(entry.path()) == slurp(other));
    }
    fs::remove_all(base);
}

TEST_CASE("grids without references fall back to fitness reporting") {
    GridSpec spec = tiny_grid(16);
    spec.reference = ReferenceMode::None;
    const GridResult result = run_grid(spec);
    for (const GapRow& row : result.gaps) {
        CHECK(row.metric == "fitness");
        CHECK(row.min > 0.0);
    }
}
