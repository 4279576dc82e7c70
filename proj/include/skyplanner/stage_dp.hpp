#pragma once

#include <vector>

namespace skyplanner {

/// Stage-wise relay problem along a fixed route. Stage k is the leg that
/// starts right after the data of waypoint k is collected; s_k = 0 sends the
/// UAV through the leg's nearest TBS, where it forwards its whole buffer.
struct StageProblem {
    std::vector<double> demand;                   // bit/Hz collected at the start of stage k
    std::vector<double> detour_energy;            // J spent on the TBS detour of stage k
    std::vector<double> detour_time;              // s
    std::vector<double> forward_energy_per_unit;  // J per bit/Hz forwarded in stage k
    std::vector<double> forward_time_per_unit;    // s per bit/Hz
    std::vector<bool> has_relay;                  // false: s_k = 0 not allowed

    std::size_t stages() const { return demand.size(); }
    void validate() const;
};

struct StageEvaluation {
    bool feasible = false;          // buffer empty after the last stage
    double energy = 0.0;            // sum of stage costs c_k
    double time = 0.0;
    std::vector<double> forwarded;  // M''_k, zero where s_k = 1
};

/// Replays decisions s (1 = fly on, 0 = visit the TBS) stage by stage.
StageEvaluation evaluate_decisions(const StageProblem& problem, const std::vector<int>& s);

struct StageSolution {
    std::vector<int> s;
    double energy = 0.0;
    double time = 0.0;
    std::vector<double> forwarded;
};

/// Minimum-energy decisions subject to an empty buffer at the end. Energy and
/// time are the replayed values of the returned decisions, so they agree bit
/// for bit with evaluate_decisions. Throws NoRelayAvailable when data is
/// collected but no later stage can reach a TBS.
StageSolution tbs_decision_dp(const StageProblem& problem);

}  // namespace skyplanner
