#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "skyplanner/harness.hpp"

namespace skyplanner::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;

/// skyplanner {plan|simulate|sweep} [flags]. Flags override the config file,
/// which overrides built-in defaults. Returns the process exit status.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

struct TrendRow {
    std::string axis;
    double value;
    std::string objective;
    double xi;
    double mean_round_trip_s;
    double mean_data_bithz;
    std::size_t feasible;
    std::size_t records;
};

/// Trend rows (one per objective label) of one batch of records.
std::vector<TrendRow> trend_rows(const std::vector<TrialRecord>& records, const std::string& axis, double value);

/// hist_round_trip.csv and hist_data.csv (50 bins between the data min and
/// max, one count column per objective) plus trend.csv. Throws EmptyResult
/// when there is no feasible record.
void emit_plot_data(const std::vector<TrialRecord>& records, const std::filesystem::path& out_dir,
                    const std::vector<TrendRow>& trend);

}  // namespace skyplanner::cli
