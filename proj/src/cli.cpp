#include "skyplanner/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "CLI11.hpp"

#include "skyplanner/config.hpp"
#include "skyplanner/errors.hpp"

namespace skyplanner::cli {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw Error("short write to '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, path);
}

std::vector<TrendRow> trend_rows(const std::vector<TrialRecord>& records, const std::string& axis, double value) {
    std::vector<TrendRow> rows;
    for (const auto& r : records) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const TrendRow& t) { return t.objective == r.objective; });
        if (it == rows.end()) {
            rows.push_back({axis, value, r.objective, 0.0, 0.0, 0.0, 0, 0});
            it = rows.end() - 1;
        }
        ++it->records;
        if (!r.feasible) continue;
        ++it->feasible;
        it->xi += r.efficiency;
        it->mean_round_trip_s += r.round_trip_s;
        it->mean_data_bithz += r.data_bithz;
    }
    for (auto& row : rows) {
        if (row.feasible == 0) continue;
        const auto n = static_cast<double>(row.feasible);
        row.xi /= n;
        row.mean_round_trip_s /= n;
        row.mean_data_bithz /= n;
    }
    return rows;
}

namespace {

constexpr int kBins = 50;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string histogram_csv(const std::vector<TrialRecord>& records, double TrialRecord::*column) {
    std::vector<std::string> labels;
    double lo = 0.0;
    double hi = 0.0;
    bool first = true;
    for (const auto& r : records) {
        if (!r.feasible) continue;
        if (std::find(labels.begin(), labels.end(), r.objective) == labels.end()) labels.push_back(r.objective);
        const double v = r.*column;
        lo = first ? v : std::min(lo, v);
        hi = first ? v : std::max(hi, v);
        first = false;
    }
    const double width = (hi - lo) / kBins;
    std::vector<std::vector<long>> counts(labels.size(), std::vector<long>(kBins, 0));
    for (const auto& r : records) {
        if (!r.feasible) continue;
        const auto series = static_cast<std::size_t>(
            std::find(labels.begin(), labels.end(), r.objective) - labels.begin());
        int bin = width > 0.0 ? static_cast<int>((r.*column - lo) / width) : 0;
        bin = std::clamp(bin, 0, kBins - 1);
        ++counts[series][static_cast<std::size_t>(bin)];
    }
    std::string out = "bin_lo,bin_hi";
    for (const auto& l : labels) out += "," + l;
    out += '\n';
    for (int b = 0; b < kBins; ++b) {
        out += fmt(lo + width * b) + "," + fmt(b + 1 == kBins ? hi : lo + width * (b + 1));
        for (const auto& series : counts) out += "," + std::to_string(series[static_cast<std::size_t>(b)]);
        out += '\n';
    }
    return out;
}

}  // namespace

void emit_plot_data(const std::vector<TrialRecord>& records, const fs::path& out_dir,
                    const std::vector<TrendRow>& trend) {
    const bool any = std::any_of(records.begin(), records.end(), [](const TrialRecord& r) { return r.feasible; });
    if (!any) throw EmptyResult("no feasible records to plot");
    fs::create_directories(out_dir);
    write_file_atomic(out_dir / "hist_round_trip.csv", histogram_csv(records, &TrialRecord::round_trip_s));
    write_file_atomic(out_dir / "hist_data.csv", histogram_csv(records, &TrialRecord::data_bithz));
    std::string t = "axis,value,objective,xi,mean_round_trip_s,mean_data_bithz,feasible,records\n";
    for (const auto& row : trend) {
        t += row.axis + "," + fmt(row.value) + "," + row.objective + "," + fmt(row.xi) + "," +
             fmt(row.mean_round_trip_s) + "," + fmt(row.mean_data_bithz) + "," + std::to_string(row.feasible) +
             "," + std::to_string(row.records) + "\n";
    }
    write_file_atomic(out_dir / "trend.csv", t);
}

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<std::string> objective;
    std::optional<double> sd_distance;
    std::optional<int> n1;
    std::optional<int> n2;
    std::optional<double> battery_wh;
    std::string out_dir = ".";
    std::string format = "csv";
    bool trace = false;
    bool single_purpose = false;
    std::string axis;
    std::vector<double> values;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", f.seed, "root seed");
    cmd->add_option("--sd-distance", f.sd_distance, "source-destination distance, m");
    cmd->add_option("--n1", f.n1, "type-I clusters to serve");
    cmd->add_option("--n2", f.n2, "type-II clusters to serve");
    cmd->add_option("--battery-wh", f.battery_wh, "battery capacity, Wh");
    cmd->add_option("--out-dir", f.out_dir, "output directory");
    cmd->add_flag("--trace", f.trace, "write trajectory trace JSON");
}

ExperimentConfig resolve(const Flags& f) {
    ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
    if (f.seed) c.seed = *f.seed;
    if (f.trials) c.trials = *f.trials;
    if (f.sd_distance) c.scene.sd_distance_m = *f.sd_distance;
    if (f.n1) c.n1 = *f.n1;
    if (f.n2) c.n2 = *f.n2;
    if (f.battery_wh) c.power.battery_j = *f.battery_wh * 3600.0;
    if (f.objective && *f.objective != "both") {
        c.objectives = {objective_from_string(*f.objective)};
    } else if (f.objective) {
        c.objectives = {Objective::kMinTime, Objective::kMaxData};
    }
    if (!f.axis.empty()) c.sweep_axis = f.axis;
    if (!f.values.empty()) c.sweep_values = f.values;
    c.validate();
    return c;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_records(const fs::path& dir, const std::string& stem, const std::vector<TrialRecord>& records,
                   const std::string& format) {
    if (format == "json") {
        write_file_atomic(dir / (stem + ".json"), records_json(records));
    } else {
        std::ostringstream csv;
        write_csv(csv, records, utc_timestamp());
        write_file_atomic(dir / (stem + ".csv"), csv.str());
    }
}

bool any_feasible(const std::vector<TrialRecord>& records) {
    return std::any_of(records.begin(), records.end(), [](const TrialRecord& r) { return r.feasible; });
}

int run_plan(const Flags& f, std::ostream& out) {
    Flags flags = f;
    if (!flags.objective) flags.objective = "max-data";
    if (*flags.objective == "both") throw InvalidParameter("plan takes a single objective");
    const ExperimentConfig c = resolve(flags);
    const ChannelModel channel(c.channel, c.collection);
    const Scene scene = sample_scene(c.scene, c.seed);
    PlannerOptions options;
    options.objective = c.objectives.front();
    options.enumeration_cap = c.enumeration_cap;
    const TrajectoryPlan plan = plan_trajectory(scene, c.n1, c.n2, channel, c.power, c.demands, options);

    fs::create_directories(flags.out_dir);
    if (flags.trace) {
        write_file_atomic(fs::path(flags.out_dir) / "plan_trace.json", plan_to_json(plan));
        write_file_atomic(fs::path(flags.out_dir) / "scene.json", scene_to_json(scene));
    }
    char line[256];
    std::snprintf(line, sizeof line, "%s: round trip %.1f s, energy %.0f J, data %.1f bit/Hz, %zu TBS\n",
                  std::string(to_string(plan.objective)).c_str(), plan.ledger.time(), plan.ledger.energy(),
                  plan.ledger.delivered_bithz, plan.tbs_visits());
    out << line;
    return kExitOk;
}

std::vector<TrialRecord> simulate_batch(const ExperimentConfig& c, bool single_purpose) {
    std::vector<TrialRecord> records = run_trials(c);
    if (single_purpose) {
        auto base = single_purpose_baseline(c);
        records.insert(records.end(), base.begin(), base.end());
    }
    return records;
}

void write_traces(const ExperimentConfig& c, const fs::path& path) {
    const ChannelModel channel(c.channel, c.collection);
    std::string lines;
    for (int t = 0; t < c.trials; ++t) {
        const Scene scene = sample_scene(c.scene, trial_seed(c.seed, static_cast<std::uint64_t>(t)));
        for (Objective o : c.objectives) {
            PlannerOptions options;
            options.objective = o;
            options.enumeration_cap = c.enumeration_cap;
            try {
                const auto plan = plan_trajectory(scene, c.n1, c.n2, channel, c.power, c.demands, options);
                lines += "{\"trial\":" + std::to_string(t) + ",\"plan\":" + plan_to_json(plan, -1) + "}\n";
            } catch (const InfeasibleTrip&) {
                lines += "{\"trial\":" + std::to_string(t) + ",\"plan\":null}\n";
            }
        }
    }
    write_file_atomic(path, lines);
}

int run_simulate(const Flags& f, std::ostream& out, std::ostream& err) {
    const ExperimentConfig c = resolve(f);
    const auto records = simulate_batch(c, f.single_purpose);
    if (!any_feasible(records)) {
        err << "every trial was infeasible\n";
        return kExitInfeasible;
    }
    const fs::path dir(f.out_dir);
    fs::create_directories(dir);
    write_records(dir, "records", records, f.format);
    write_file_atomic(dir / "summary.json", summary_json(records, c));
    emit_plot_data(records, dir, trend_rows(records, "sd_distance", c.scene.sd_distance_m));
    if (f.trace) write_traces(c, dir / "traces.jsonl");
    for (const auto& row : trend_rows(records, "sd_distance", c.scene.sd_distance_m)) {
        char line[200];
        std::snprintf(line, sizeof line, "%s: xi %.4f, round trip %.1f s, data %.1f bit/Hz (%zu/%zu feasible)\n",
                      row.objective.c_str(), row.xi, row.mean_round_trip_s, row.mean_data_bithz, row.feasible,
                      row.records);
        out << line;
    }
    return kExitOk;
}

int run_sweep(const Flags& f, std::ostream& out, std::ostream& err) {
    const ExperimentConfig c = resolve(f);
    if (c.sweep_axis.empty() || c.sweep_values.empty()) {
        throw InvalidParameter("sweep needs --axis and --values (or a sweep block in the config)");
    }
    const fs::path dir(f.out_dir);
    fs::create_directories(dir);
    std::vector<TrialRecord> all;
    std::vector<TrendRow> trend;
    for (double value : c.sweep_values) {
        const ExperimentConfig point = with_axis(c, c.sweep_axis, value);
        const auto records = simulate_batch(point, f.single_purpose);
        const std::string stem = c.sweep_axis + "_" + fmt(value);
        write_records(dir, "records_" + stem, records, f.format);
        if (any_feasible(records)) write_file_atomic(dir / ("summary_" + stem + ".json"), summary_json(records, point));
        for (const auto& row : trend_rows(records, c.sweep_axis, value)) {
            trend.push_back(row);
            char line[200];
            std::snprintf(line, sizeof line, "%s=%s %s: xi %.4f (%zu/%zu feasible)\n", c.sweep_axis.c_str(),
                          fmt(value).c_str(), row.objective.c_str(), row.xi, row.feasible, row.records);
            out << line;
        }
        all.insert(all.end(), records.begin(), records.end());
    }
    if (!any_feasible(all)) {
        err << "every trial was infeasible\n";
        return kExitInfeasible;
    }
    emit_plot_data(all, dir, trend);
    return kExitOk;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-purpose delivery UAV planner and Monte Carlo simulator", "skyplanner"};
    app.require_subcommand(1);
    Flags f;

    auto* plan = app.add_subcommand("plan", "plan one trajectory on the scene of --seed");
    add_common(plan, f);
    plan->add_option("--objective", f.objective, "min-time or max-data");

    auto* simulate = app.add_subcommand("simulate", "run Monte Carlo trials");
    add_common(simulate, f);
    simulate->add_option("--trials", f.trials, "number of trials")->check(CLI::PositiveNumber);
    simulate->add_option("--objective", f.objective, "min-time, max-data or both");
    simulate->add_option("--format", f.format, "record format")->check(CLI::IsMember({"csv", "json"}));
    simulate->add_flag("--single-purpose", f.single_purpose, "also run the separate package/data trips");

    auto* sweep = app.add_subcommand("sweep", "repeat simulate along one parameter axis");
    add_common(sweep, f);
    sweep->add_option("--trials", f.trials, "number of trials per value")->check(CLI::PositiveNumber);
    sweep->add_option("--objective", f.objective, "min-time, max-data or both");
    sweep->add_option("--format", f.format, "record format")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--axis", f.axis, "sd_distance, battery_wh, battery_scale, n1, n2, lambda_tbs");
    sweep->add_option("--values", f.values, "comma-separated axis values")->delimiter(',');
    sweep->add_flag("--single-purpose", f.single_purpose, "also run the separate package/data trips");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*plan) return run_plan(f, out);
        if (*simulate) return run_simulate(f, out, err);
        return run_sweep(f, out, err);
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InfeasibleTrip& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const EmptyResult& e) {
        err << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace skyplanner::cli
