#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "skyplanner/channel.hpp"
#include "skyplanner/energy.hpp"
#include "skyplanner/hover.hpp"
#include "skyplanner/route.hpp"
#include "skyplanner/selection.hpp"
#include "skyplanner/stage_dp.hpp"

namespace skyplanner {

enum class Objective { kMinTime, kMaxData };

std::string_view to_string(Objective objective);
Objective objective_from_string(std::string_view name);

enum class NodeKind { kSource, kCluster, kRelay, kDestination };

std::string_view to_string(NodeKind kind);

/// One stop of the flown trajectory. Relays are the TBS visits chosen by the
/// stage decisions; `load` is the carrying state while serving at the node
/// and on the leg leaving it.
struct PlanNode {
    NodeKind kind;
    Point2D target;
    Point2D hover;
    Load load;
    int cluster = -1;    // ServingSet index for clusters
    int tbs = -1;        // scene TBS index for relays
    int stage = -1;      // stage index for relays
    double data = 0.0;   // bit/Hz collected (cluster) or forwarded (relay)
};

struct TripLedger {
    double t_col = 0.0;
    double t_del = 0.0;
    double t_tra = 0.0;
    double e_col = 0.0;
    double e_del = 0.0;
    double e_tra = 0.0;
    double collected_bithz = 0.0;
    double delivered_bithz = 0.0;
    std::vector<double> stage_forwarded;  // M''_k per relay stop, in visiting order

    double time() const { return t_col + t_del + t_tra; }
    double energy() const { return e_col + e_del + e_tra; }
};

/// Time/energy/data totals of a node sequence flown through its hover points.
/// Velocity and powers switch from loaded to empty at the destination.
TripLedger trip_ledger(const std::vector<PlanNode>& nodes, const ChannelModel& channel,
                       const PowerProfile& power);

/// Recomputes relay amounts as the running buffer of collected data, so that
/// the delivered total is summed exactly like the collected one.
void assign_relay_data(std::vector<PlanNode>& nodes);

struct RouteEvaluation {
    RouteCandidate route;
    std::vector<TbsAssociation> associations;  // per stage
    StageProblem problem;
    StageSolution dp;
    double base_energy = 0.0;  // collection + direct travel, no TBS detours
    double base_time = 0.0;
    double energy = 0.0;       // E' = dp.energy + base_energy
    double time = 0.0;         // T' = dp.time + base_time
};

/// Zero-hover evaluation of one route: TBS association, stage problem and its
/// DP solution. `data` holds the bit/Hz collected per ServingSet index.
RouteEvaluation evaluate_route(const RouteCandidate& route, const std::vector<double>& data,
                               const std::vector<Point2D>& tbs, const ChannelModel& channel,
                               const PowerProfile& power, bool carry_package);

enum class ShortfallAction { kUnchanged, kTruncate, kDrop };

struct ShortfallDecision {
    ShortfallAction action;
    double end_data;  // new amount for the lowest-priority cluster
};

/// Over-budget handling for the winning route. With E' <= B nothing changes;
/// otherwise the end cluster keeps D' = D_end - (E' - B) / unit_energy, or is
/// dropped when D' < 0. unit_energy is the cost of collecting and forwarding
/// one bit/Hz of that cluster.
ShortfallDecision apply_energy_shortfall(double energy_j, double budget_j, double end_data,
                                         double unit_energy);

struct PlannerOptions {
    Objective objective = Objective::kMaxData;
    bool carry_package = true;
    bool optimize_hover = true;
    std::size_t enumeration_cap = kDefaultEnumerationCap;
    double hover_epsilon = kHoverEpsilon;
    int hover_max_sweeps = kHoverMaxSweeps;
};

struct TrajectoryPlan {
    Objective objective = Objective::kMaxData;
    bool carry_package = true;
    ServingSet serving;          // clusters still in the plan
    int dropped_clusters = 0;
    RouteEvaluation evaluation;  // winning route at zero hover distance
    std::vector<PlanNode> nodes;
    TripLedger ledger;
    bool truncated = false;      // lowest-priority demand reduced for the budget
    double residual_data = 0.0;  // extra data bought with leftover energy
    int hover_sweeps = 0;
    std::vector<double> hover_trace;
    int residual_iterations = 0;

    std::size_t tbs_visits() const;  // distinct TBSs used as relays
    bool delivered_first() const;    // D reached before every cluster
    std::size_t served(ClusterType type) const;
};

/// Energy of the package-only round trip S -> D -> S.
double bare_trip_energy(const Scene& scene, const PowerProfile& power);

/// Selection, per-route DP, route choice, budget handling, hover descent and,
/// for max-data, spending the remaining energy on extra data.
TrajectoryPlan plan_trajectory(const Scene& scene, int n1, int n2, const ChannelModel& channel,
                               const PowerProfile& power, const Demands& demands,
                               const PlannerOptions& options);

/// Trace document: route waypoints with roles, decisions, TBS points, hover
/// points, per-stage forwarded data and the ledger breakdown.
std::string plan_to_json(const TrajectoryPlan& plan, int indent = 2);

}  // namespace skyplanner
