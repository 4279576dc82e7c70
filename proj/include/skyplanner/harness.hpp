#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "skyplanner/channel.hpp"
#include "skyplanner/energy.hpp"
#include "skyplanner/geometry.hpp"
#include "skyplanner/planner.hpp"

namespace skyplanner {

struct ExperimentConfig {
    SceneParams scene;
    ChannelParams channel;
    CollectionModel collection = CollectionModel::kMeanSnr;
    PowerProfile power;
    Demands demands;
    int n1 = 2;
    int n2 = 2;
    int trials = 1000;
    std::uint64_t seed = 1;
    std::vector<Objective> objectives{Objective::kMinTime, Objective::kMaxData};
    std::size_t enumeration_cap = kDefaultEnumerationCap;
    std::string sweep_axis;
    std::vector<double> sweep_values;

    void validate() const;
};

struct TrialRecord {
    std::uint64_t trial = 0;
    std::string objective;
    int n1_served = 0;
    int n2_served = 0;
    double round_trip_s = 0.0;
    double data_bithz = 0.0;
    double energy_j = 0.0;
    double efficiency = 0.0;
    int tbs_visits = 0;
    bool delivered_first = false;
    bool feasible = false;
    // Bookkeeping for invariant checks; not part of the CSV.
    double collected_bithz = 0.0;
    double budget_j = 0.0;
    std::string failure;
};

/// Worker threads used by run_trials: SKYPLANNER_THREADS when set, otherwise
/// the hardware concurrency, and never more than `jobs`.
unsigned worker_count(std::size_t jobs);

/// One record per (trial, objective), ordered by trial then by the configured
/// objective order. Trial t plans on the scene of trial_seed(seed, t).
/// Infeasible trials are kept with feasible = false.
std::vector<TrialRecord> run_trials(const ExperimentConfig& config);

/// Package-only trip S -> D -> S plus a data-only tour over the same serving
/// clusters, each on a fresh battery. Objectives are labelled "single-...".
std::vector<TrialRecord> single_purpose_baseline(const ExperimentConfig& config);

/// Mean of data / round-trip time over feasible records whose objective label
/// matches (all labels when empty). Throws InvalidParameter without any.
double delivery_efficiency(const std::vector<TrialRecord>& records, const std::string& objective = "");

/// 1 / (T_c2u(0) + T_u2b(0)): every bit is both collected and forwarded.
double efficiency_upper_bound(const ChannelModel& channel);

/// Copy of `config` with the named sweep axis set to `value`. Axes:
/// sd_distance (m), battery_wh, battery_scale (x the configured battery),
/// n1, n2, lambda_tbs, trials.
ExperimentConfig with_axis(const ExperimentConfig& config, const std::string& axis, double value);

inline constexpr const char* kCsvHeader =
    "trial,objective,n1_served,n2_served,round_trip_s,data_bithz,energy_j,efficiency,tbs_visits,"
    "delivered_first,feasible";

/// CSV with a leading "# generated <timestamp>" metadata line, then the header.
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records, const std::string& timestamp);

/// Per-objective mean/stddev/quantiles of each numeric column, the feasible
/// count, xi and its upper bound, as a JSON document.
std::string summary_json(const std::vector<TrialRecord>& records, const ExperimentConfig& config);

std::string records_json(const std::vector<TrialRecord>& records);

}  // namespace skyplanner
