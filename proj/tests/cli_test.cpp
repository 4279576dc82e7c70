#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"

#include "skyplanner/cli.hpp"
#include "skyplanner/errors.hpp"

namespace skyplanner {
namespace {

namespace fs = std::filesystem;

const std::string kConfig = SKYPLANNER_CONFIG_DIR "/default.json";

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("skyplanner_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Runs the installed binary; returns its exit status, stderr in `err_text`.
int run_binary(const std::string& args, const fs::path& dir, std::string* err_text = nullptr) {
    const fs::path err_file = dir / "stderr.txt";
    const std::string cmd = std::string(SKYPLANNER_CLI_PATH) + " " + args + " > " + (dir / "stdout.txt").string() +
                            " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    if (err_text) {
        std::ifstream in(err_file);
        *err_text = std::string(std::istreambuf_iterator<char>(in), {});
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int dispatch(std::vector<std::string> args, std::string* err_text = nullptr) {
    args.insert(args.begin(), "skyplanner");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    if (err_text) *err_text = err.str();
    return code;
}

std::vector<std::string> lines_of(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

nlohmann::json json_of(const fs::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

TEST(Cli, SimulateWritesRecordsAndSummary) {
    const fs::path dir = scratch("simulate");
    ASSERT_EQ(run_binary("simulate --config " + kConfig + " --trials 100 --seed 7 --objective max-data --out-dir " +
                             dir.string(),
                         dir),
              0);
    const auto rows = lines_of(dir / "records.csv");
    ASSERT_EQ(rows.size(), 102u);
    EXPECT_EQ(rows[0].rfind("# generated ", 0), 0u);
    EXPECT_EQ(rows[1], kCsvHeader);
    const auto summary = json_of(dir / "summary.json");
    EXPECT_EQ(summary["trials"], 100);
    EXPECT_EQ(summary["seed"], 7);
    EXPECT_TRUE(fs::exists(dir / "hist_round_trip.csv"));
    EXPECT_TRUE(fs::exists(dir / "hist_data.csv"));
    EXPECT_TRUE(fs::exists(dir / "trend.csv"));
}

TEST(Cli, IdenticalRunsGiveIdenticalCsv) {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    const std::string args = "simulate --config " + kConfig + " --trials 8 --seed 5 --out-dir ";
    ASSERT_EQ(run_binary(args + a.string(), a), 0);
    ASSERT_EQ(run_binary(args + b.string(), b), 0);
    auto la = lines_of(a / "records.csv");
    auto lb = lines_of(b / "records.csv");
    ASSERT_EQ(la.size(), 18u);
    la.erase(la.begin());
    lb.erase(lb.begin());
    EXPECT_EQ(la, lb);
}

TEST(Cli, PlanTrace) {
    const fs::path dir = scratch("plan");
    ASSERT_EQ(run_binary("plan --config " + kConfig + " --seed 3 --objective max-data --trace --out-dir " +
                             dir.string(),
                         dir),
              0);
    const auto trace = json_of(dir / "plan_trace.json");
    EXPECT_EQ(trace["objective"], "max-data");
    EXPECT_TRUE(trace.contains("decisions"));
    EXPECT_TRUE(trace.contains("ledger"));
    EXPECT_TRUE(fs::exists(dir / "scene.json"));
}

TEST(Cli, SweepWritesOneSummaryPerValue) {
    const fs::path dir = scratch("sweep");
    ASSERT_EQ(run_binary("sweep --config " + kConfig +
                             " --trials 4 --axis sd_distance --values 3000,5000,7000 --out-dir " + dir.string(),
                         dir),
              0);
    for (const char* v : {"3000", "5000", "7000"}) {
        EXPECT_TRUE(fs::exists(dir / ("summary_sd_distance_" + std::string(v) + ".json"))) << v;
        EXPECT_TRUE(fs::exists(dir / ("records_sd_distance_" + std::string(v) + ".csv"))) << v;
    }
    EXPECT_EQ(lines_of(dir / "trend.csv").size(), 1u + 3u * 2u);
}

TEST(Cli, UnknownFlagIsUsageError) {
    const fs::path dir = scratch("usage");
    std::string err;
    EXPECT_EQ(run_binary("simulate --bogus 1", dir, &err), 1);
    EXPECT_NE(err.find("Usage"), std::string::npos);
    EXPECT_EQ(run_binary("fly", dir), 1);
    EXPECT_EQ(run_binary("", dir), 1);
}

TEST(Cli, BadValuesAreUsageErrors) {
    const fs::path dir = scratch("bad_values");
    EXPECT_EQ(dispatch({"simulate", "--trials", "0", "--out-dir", dir.string()}), 1);
    EXPECT_EQ(dispatch({"simulate", "--objective", "fastest", "--trials", "1", "--out-dir", dir.string()}), 1);
    std::ofstream(dir / "bad.json") << R"({"scene": {"nope": 1}})";
    std::string err;
    EXPECT_EQ(dispatch({"simulate", "--config", (dir / "bad.json").string(), "--out-dir", dir.string()}, &err), 1);
    EXPECT_NE(err.find("nope"), std::string::npos);
}

TEST(Cli, InfeasibleBatteryExitsTwo) {
    const fs::path dir = scratch("infeasible");
    EXPECT_EQ(run_binary("simulate --trials 3 --battery-wh 1 --out-dir " + dir.string(), dir), 2);
    EXPECT_FALSE(fs::exists(dir / "records.csv"));
    EXPECT_EQ(run_binary("plan --battery-wh 1 --out-dir " + dir.string(), dir), 2);
}

// flag > config file > built-in default, for every combination.
TEST(Cli, OverridePrecedenceMatrix) {
    const fs::path dir = scratch("precedence");
    std::ofstream(dir / "cfg.json") << R"({"scene": {"sd_distance_m": 4000}, "experiment": {"trials": 3, "seed": 9}})";
    struct Case {
        bool use_config;
        bool use_flags;
        int trials;
        double sd;
        int seed;
    };
    for (const Case& c : {Case{false, false, 1000, 5000, 1}, Case{true, false, 3, 4000, 9},
                          Case{false, true, 2, 6000, 4}, Case{true, true, 2, 6000, 4}}) {
        std::vector<std::string> args{"simulate", "--out-dir", dir.string(), "--objective", "min-time"};
        if (c.use_config) {
            args.insert(args.end(), {"--config", (dir / "cfg.json").string()});
        }
        if (c.use_flags) {
            args.insert(args.end(), {"--trials", "2", "--sd-distance", "6000", "--seed", "4"});
        } else if (!c.use_config) {
            // The built-in trial count is too slow for a unit test; only check the other two.
            args.insert(args.end(), {"--trials", "1"});
        }
        ASSERT_EQ(dispatch(args), 0);
        const auto summary = json_of(dir / "summary.json");
        if (c.use_config || c.use_flags) {
            EXPECT_EQ(summary["trials"], c.trials);
        }
        EXPECT_EQ(summary["sd_distance_m"], c.sd);
        EXPECT_EQ(summary["seed"], c.seed);
    }
}

TrialRecord record(const std::string& objective, double t, double m) {
    TrialRecord r;
    r.objective = objective;
    r.round_trip_s = t;
    r.data_bithz = m;
    r.efficiency = m / t;
    r.feasible = true;
    return r;
}

std::vector<std::vector<long>> histogram_counts(const fs::path& file, std::vector<std::string>* header = nullptr) {
    const auto rows = lines_of(file);
    std::vector<std::vector<long>> counts;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::stringstream ss(rows[i]);
        std::vector<std::string> cells;
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (i == 0) {
            if (header) *header = cells;
            continue;
        }
        std::vector<long> row;
        for (std::size_t k = 2; k < cells.size(); ++k) row.push_back(std::stol(cells[k]));
        counts.push_back(row);
    }
    return counts;
}

TEST(PlotData, BinsConserveRecords) {
    const fs::path dir = scratch("plot1000");
    std::vector<TrialRecord> records;
    for (int i = 0; i < 1000; ++i) records.push_back(record("max-data", 2000.0 + 3.7 * i, 100.0 + (i * 37) % 900));
    cli::emit_plot_data(records, dir, cli::trend_rows(records, "sd_distance", 5000));
    for (const char* name : {"hist_round_trip.csv", "hist_data.csv"}) {
        const auto counts = histogram_counts(dir / name);
        ASSERT_EQ(counts.size(), 50u);
        long total = 0;
        for (const auto& row : counts) total += row.at(0);
        EXPECT_EQ(total, 1000) << name;
    }
}

TEST(PlotData, SingleRecordSingleBin) {
    const fs::path dir = scratch("plot1");
    cli::emit_plot_data({record("min-time", 3000, 5000)}, dir, {});
    const auto counts = histogram_counts(dir / "hist_round_trip.csv");
    ASSERT_EQ(counts.size(), 50u);
    int occupied = 0;
    for (const auto& row : counts) occupied += row.at(0) > 0;
    EXPECT_EQ(occupied, 1);
}

TEST(PlotData, PairedObjectivesAreTwoSeries) {
    const fs::path dir = scratch("plot2");
    std::vector<TrialRecord> records{record("min-time", 2900, 4600), record("max-data", 3600, 5900),
                                     record("min-time", 3000, 4700), record("max-data", 3500, 6000)};
    cli::emit_plot_data(records, dir, cli::trend_rows(records, "sd_distance", 5000));
    std::vector<std::string> header;
    const auto counts = histogram_counts(dir / "hist_data.csv", &header);
    EXPECT_EQ(header, (std::vector<std::string>{"bin_lo", "bin_hi", "min-time", "max-data"}));
    long a = 0, b = 0;
    for (const auto& row : counts) {
        a += row.at(0);
        b += row.at(1);
    }
    EXPECT_EQ(a, 2);
    EXPECT_EQ(b, 2);
    EXPECT_EQ(lines_of(dir / "trend.csv").size(), 3u);
}

TEST(PlotData, NothingToPlot) {
    const fs::path dir = scratch("plot0");
    EXPECT_THROW(cli::emit_plot_data({}, dir, {}), EmptyResult);
    TrialRecord failed;
    EXPECT_THROW(cli::emit_plot_data({failed}, dir, {}), EmptyResult);
}

TEST(AtomicWrite, LeavesNoTemporaries) {
    const fs::path dir = scratch("atomic");
    cli::write_file_atomic(dir / "out.txt", "first");
    cli::write_file_atomic(dir / "out.txt", "second");
    EXPECT_EQ(lines_of(dir / "out.txt"), std::vector<std::string>{"second"});
    EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 1);
    EXPECT_ANY_THROW(cli::write_file_atomic(dir / "missing" / "out.txt", "x"));
    EXPECT_FALSE(fs::exists(dir / "missing"));
}

}  // namespace
}  // namespace skyplanner
