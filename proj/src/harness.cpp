#include "skyplanner/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "skyplanner/errors.hpp"

namespace skyplanner {

void ExperimentConfig::validate() const {
    scene.validate();
    channel.validate();
    power.validate();
    if (trials < 1) throw InvalidParameter("trials must be >= 1");
    if (n1 < 0 || n2 < 0) throw InvalidParameter("cluster counts must be >= 0");
    if (objectives.empty()) throw InvalidParameter("at least one objective is required");
    if (demands.type1_bithz < 0.0 || demands.type2_bithz < 0.0) throw InvalidParameter("demands must be >= 0");
}

unsigned worker_count(std::size_t jobs) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SKYPLANNER_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

namespace {

TrialRecord record_from_plan(std::uint64_t trial, const std::string& label, const TrajectoryPlan& plan) {
    TrialRecord r;
    r.trial = trial;
    r.objective = label;
    r.n1_served = static_cast<int>(plan.served(ClusterType::kTypeI));
    r.n2_served = static_cast<int>(plan.served(ClusterType::kTypeII));
    r.round_trip_s = plan.ledger.time();
    r.data_bithz = plan.ledger.delivered_bithz;
    r.energy_j = plan.ledger.energy();
    r.efficiency = r.round_trip_s > 0.0 ? r.data_bithz / r.round_trip_s : 0.0;
    r.tbs_visits = static_cast<int>(plan.tbs_visits());
    r.delivered_first = plan.delivered_first();
    r.feasible = true;
    r.collected_bithz = plan.ledger.collected_bithz;
    return r;
}

TrialRecord infeasible(std::uint64_t trial, const std::string& label, const std::string& why) {
    TrialRecord r;
    r.trial = trial;
    r.objective = label;
    r.failure = why;
    return r;
}

// Runs `per_trial` for every trial on the worker pool; slots keep trial order.
template <class F>
std::vector<TrialRecord> parallel_trials(int trials, F&& per_trial) {
    std::vector<std::vector<TrialRecord>> slots(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int t = next++; t < trials; t = next++) slots[static_cast<std::size_t>(t)] = per_trial(t);
    };
    const unsigned n = worker_count(static_cast<std::size_t>(trials));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<TrialRecord> out;
    for (auto& slot : slots) {
        for (auto& r : slot) out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

std::vector<TrialRecord> run_trials(const ExperimentConfig& config) {
    config.validate();
    const ChannelModel channel(config.channel, config.collection);
    return parallel_trials(config.trials, [&](int t) {
        const auto trial = static_cast<std::uint64_t>(t);
        const Scene scene = sample_scene(config.scene, trial_seed(config.seed, trial));
        std::vector<TrialRecord> out;
        for (Objective objective : config.objectives) {
            const std::string label(to_string(objective));
            PlannerOptions options;
            options.objective = objective;
            options.enumeration_cap = config.enumeration_cap;
            try {
                const TrajectoryPlan plan =
                    plan_trajectory(scene, config.n1, config.n2, channel, config.power, config.demands, options);
                out.push_back(record_from_plan(trial, label, plan));
            } catch (const InfeasibleTrip& e) {
                out.push_back(infeasible(trial, label, e.what()));
            } catch (const NoRelayAvailable& e) {
                out.push_back(infeasible(trial, label, e.what()));
            }
            out.back().budget_j = config.power.battery_j;
        }
        return out;
    });
}

std::vector<TrialRecord> single_purpose_baseline(const ExperimentConfig& config) {
    config.validate();
    const ChannelModel channel(config.channel, config.collection);
    const PowerProfile& power = config.power;
    return parallel_trials(config.trials, [&](int t) {
        const auto trial = static_cast<std::uint64_t>(t);
        const Scene scene = sample_scene(config.scene, trial_seed(config.seed, trial));
        const double L = distance(scene.source, scene.destination);
        const double package_time = L / power.v_loaded_mps + L / power.v_empty_mps;
        const double package_energy = bare_trip_energy(scene, power);
        std::vector<TrialRecord> out;
        for (Objective objective : config.objectives) {
            const std::string label = "single-" + std::string(to_string(objective));
            if (package_energy > power.battery_j) {
                out.push_back(infeasible(trial, label, "package trip exceeds the battery"));
                out.back().budget_j = 2.0 * power.battery_j;
                continue;
            }
            PlannerOptions options;
            options.objective = objective;
            options.carry_package = false;
            options.enumeration_cap = config.enumeration_cap;
            try {
                const TrajectoryPlan plan =
                    plan_trajectory(scene, config.n1, config.n2, channel, power, config.demands, options);
                TrialRecord r = record_from_plan(trial, label, plan);
                r.round_trip_s += package_time;
                r.energy_j += package_energy;
                r.efficiency = r.data_bithz / r.round_trip_s;
                r.delivered_first = true;
                out.push_back(r);
            } catch (const InfeasibleTrip& e) {
                out.push_back(infeasible(trial, label, e.what()));
            } catch (const NoRelayAvailable& e) {
                out.push_back(infeasible(trial, label, e.what()));
            }
            out.back().budget_j = 2.0 * power.battery_j;
        }
        return out;
    });
}

double delivery_efficiency(const std::vector<TrialRecord>& records, const std::string& objective) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : records) {
        if (!r.feasible || (!objective.empty() && r.objective != objective)) continue;
        sum += r.efficiency;
        ++n;
    }
    if (n == 0) throw InvalidParameter("no feasible records to average");
    return sum / static_cast<double>(n);
}

double efficiency_upper_bound(const ChannelModel& channel) {
    return 1.0 / (channel.collect_time(0.0) + channel.forward_time(0.0));
}

ExperimentConfig with_axis(const ExperimentConfig& config, const std::string& axis, double value) {
    ExperimentConfig out = config;
    if (axis == "sd_distance") {
        out.scene.sd_distance_m = value;
    } else if (axis == "battery_wh") {
        out.power.battery_j = value * 3600.0;
    } else if (axis == "battery_scale") {
        out.power.battery_j = config.power.battery_j * value;
    } else if (axis == "n1") {
        out.n1 = static_cast<int>(value);
    } else if (axis == "n2") {
        out.n2 = static_cast<int>(value);
    } else if (axis == "lambda_tbs") {
        out.scene.lambda_tbs_km2 = value;
    } else if (axis == "trials") {
        out.trials = static_cast<int>(value);
    } else {
        throw InvalidParameter("unknown sweep axis '" + axis + "'");
    }
    out.validate();
    return out;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records, const std::string& timestamp) {
    out << "# generated " << timestamp << '\n' << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.trial << ',' << r.objective << ',' << r.n1_served << ',' << r.n2_served << ','
            << format_double(r.round_trip_s) << ',' << format_double(r.data_bithz) << ','
            << format_double(r.energy_j) << ',' << format_double(r.efficiency) << ',' << r.tbs_visits << ','
            << (r.delivered_first ? 1 : 0) << ',' << (r.feasible ? 1 : 0) << '\n';
    }
}

namespace {

nlohmann::ordered_json column_stats(std::vector<double> v) {
    nlohmann::ordered_json j;
    if (v.empty()) return j;
    std::sort(v.begin(), v.end());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double stddev = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
    auto quantile = [&v](double q) {
        const double pos = q * static_cast<double>(v.size() - 1);
        const auto lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
    };
    j["mean"] = mean;
    j["stddev"] = stddev;
    j["min"] = v.front();
    j["q05"] = quantile(0.05);
    j["q25"] = quantile(0.25);
    j["median"] = quantile(0.5);
    j["q75"] = quantile(0.75);
    j["q95"] = quantile(0.95);
    j["max"] = v.back();
    return j;
}

}  // namespace

std::string summary_json(const std::vector<TrialRecord>& records, const ExperimentConfig& config) {
    using nlohmann::ordered_json;
    const ChannelModel channel(config.channel, config.collection);
    ordered_json j;
    j["trials"] = config.trials;
    j["seed"] = config.seed;
    j["sd_distance_m"] = config.scene.sd_distance_m;
    j["battery_wh"] = config.power.battery_j / 3600.0;
    j["n1"] = config.n1;
    j["n2"] = config.n2;
    j["xi_upper_bound"] = efficiency_upper_bound(channel);

    std::vector<std::string> labels;
    for (const auto& r : records) {
        if (std::find(labels.begin(), labels.end(), r.objective) == labels.end()) labels.push_back(r.objective);
    }
    ordered_json per = ordered_json::object();
    for (const auto& label : labels) {
        std::map<std::string, std::vector<double>> cols;
        std::size_t total = 0;
        std::size_t feasible = 0;
        for (const auto& r : records) {
            if (r.objective != label) continue;
            ++total;
            if (!r.feasible) continue;
            ++feasible;
            cols["n1_served"].push_back(r.n1_served);
            cols["n2_served"].push_back(r.n2_served);
            cols["round_trip_s"].push_back(r.round_trip_s);
            cols["data_bithz"].push_back(r.data_bithz);
            cols["energy_j"].push_back(r.energy_j);
            cols["efficiency"].push_back(r.efficiency);
            cols["tbs_visits"].push_back(r.tbs_visits);
            cols["delivered_first"].push_back(r.delivered_first ? 1.0 : 0.0);
        }
        ordered_json block;
        block["records"] = total;
        block["feasible"] = feasible;
        block["xi"] = feasible > 0 ? ordered_json(delivery_efficiency(records, label)) : ordered_json(nullptr);
        for (const char* name : {"n1_served", "n2_served", "round_trip_s", "data_bithz", "energy_j",
                                 "efficiency", "tbs_visits", "delivered_first"}) {
            block[name] = column_stats(cols[name]);
        }
        per[label] = block;
    }
    j["objectives"] = per;
    return j.dump(2);
}

std::string records_json(const std::vector<TrialRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        arr.push_back({{"trial", r.trial},
                       {"objective", r.objective},
                       {"n1_served", r.n1_served},
                       {"n2_served", r.n2_served},
                       {"round_trip_s", r.round_trip_s},
                       {"data_bithz", r.data_bithz},
                       {"energy_j", r.energy_j},
                       {"efficiency", r.efficiency},
                       {"tbs_visits", r.tbs_visits},
                       {"delivered_first", r.delivered_first},
                       {"feasible", r.feasible}});
    }
    return arr.dump(2);
}

}  // namespace skyplanner
