#include "skyplanner/planner.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "json.hpp"

#include "skyplanner/errors.hpp"

namespace skyplanner {

std::string_view to_string(Objective objective) {
    return objective == Objective::kMinTime ? "min-time" : "max-data";
}

Objective objective_from_string(std::string_view name) {
    if (name == "min-time") return Objective::kMinTime;
    if (name == "max-data") return Objective::kMaxData;
    throw InvalidParameter("unknown objective '" + std::string(name) + "'");
}

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::kSource: return "source";
        case NodeKind::kCluster: return "cluster";
        case NodeKind::kRelay: return "relay";
        case NodeKind::kDestination: return "destination";
    }
    return "unknown";
}

void assign_relay_data(std::vector<PlanNode>& nodes) {
    double buffer = 0.0;
    for (PlanNode& node : nodes) {
        if (node.kind == NodeKind::kCluster) {
            buffer = buffer + node.data;
        } else if (node.kind == NodeKind::kRelay) {
            node.data = buffer;
            buffer = 0.0;
        }
    }
}

TripLedger trip_ledger(const std::vector<PlanNode>& nodes, const ChannelModel& channel,
                       const PowerProfile& power) {
    TripLedger ledger;
    double group = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const PlanNode& node = nodes[i];
        const double d = distance(node.hover, node.target);
        if (node.kind == NodeKind::kCluster) {
            const double t = node.data * channel.collect_time(d);
            ledger.t_col += t;
            ledger.e_col += t * power.serve_power(node.load);
            group = group + node.data;
        } else if (node.kind == NodeKind::kRelay) {
            const double t = node.data * channel.forward_time(d);
            ledger.t_del += t;
            ledger.e_del += t * power.serve_power(node.load);
            ledger.stage_forwarded.push_back(node.data);
            ledger.delivered_bithz += node.data;
            ledger.collected_bithz += group;
            group = 0.0;
        }
        if (i + 1 < nodes.size()) {
            const double t = distance(node.hover, nodes[i + 1].hover) / power.velocity(node.load);
            ledger.t_tra += t;
            ledger.e_tra += t * power.motion_power(node.load);
        }
    }
    // Data still on board at the end was never delivered; keep it visible.
    ledger.collected_bithz += group;
    return ledger;
}

namespace {

Load load_if(bool loaded) { return loaded ? Load::kLoaded : Load::kEmpty; }

// Carrying state after leaving waypoint k of the route.
bool loaded_after(std::size_t k, std::size_t dest, bool carry) {
    return carry && dest != RouteCandidate::npos && dest > k;
}

}  // namespace

RouteEvaluation evaluate_route(const RouteCandidate& route, const std::vector<double>& data,
                               const std::vector<Point2D>& tbs, const ChannelModel& channel,
                               const PowerProfile& power, bool carry_package) {
    RouteEvaluation ev;
    ev.route = route;
    const auto& W = route.waypoints;
    const std::size_t n = W.size();
    const std::size_t stages = n - 1;
    const std::size_t dest = route.destination_index();
    const double t_c2u = channel.collect_time(0.0);
    const double t_u2b = channel.forward_time(0.0);

    if (stages > 0 && !tbs.empty()) ev.associations = nearest_tbs_per_segment(route.points(), tbs);

    StageProblem& p = ev.problem;
    Point2D prev = W.back().point;  // take-off from S
    const Load first_leg = load_if(carry_package && dest != RouteCandidate::npos);
    {
        const double t = distance(prev, W.front().point) / power.velocity(first_leg);
        ev.base_time += t;
        ev.base_energy += t * power.motion_power(first_leg);
    }
    for (std::size_t k = 0; k < stages; ++k) {
        const Load load = load_if(loaded_after(k, dest, carry_package));
        const double demand = W[k].cluster >= 0 ? data.at(static_cast<std::size_t>(W[k].cluster)) : 0.0;
        if (demand > 0.0) {
            const double t = demand * t_c2u;
            ev.base_time += t;
            ev.base_energy += t * power.serve_power(load);
        }
        const Point2D a = W[k].point;
        const Point2D b = W[k + 1].point;
        const double direct = distance(a, b);
        const double v = power.velocity(load);
        const double leg_time = direct / v;
        ev.base_time += leg_time;
        ev.base_energy += leg_time * power.motion_power(load);

        p.demand.push_back(demand);
        p.forward_energy_per_unit.push_back(t_u2b * power.serve_power(load));
        p.forward_time_per_unit.push_back(t_u2b);
        if (ev.associations.empty()) {
            p.has_relay.push_back(false);
            p.detour_energy.push_back(0.0);
            p.detour_time.push_back(0.0);
        } else {
            const Point2D relay = ev.associations[k].point;
            const double extra = std::max(0.0, distance(a, relay) + distance(relay, b) - direct);
            p.has_relay.push_back(true);
            p.detour_time.push_back(extra / v);
            p.detour_energy.push_back(extra / v * power.motion_power(load));
        }
    }
    ev.dp = tbs_decision_dp(p);
    ev.energy = ev.dp.energy + ev.base_energy;
    ev.time = ev.dp.time + ev.base_time;
    return ev;
}

ShortfallDecision apply_energy_shortfall(double energy_j, double budget_j, double end_data,
                                         double unit_energy) {
    if (energy_j <= budget_j) return {ShortfallAction::kUnchanged, end_data};
    if (!(unit_energy > 0.0)) throw InvalidParameter("unit energy must be > 0");
    const double reduced = end_data - (energy_j - budget_j) / unit_energy;
    if (reduced < 0.0) return {ShortfallAction::kDrop, 0.0};
    return {ShortfallAction::kTruncate, reduced};
}

std::size_t TrajectoryPlan::tbs_visits() const {
    std::set<int> used;
    for (const auto& node : nodes) {
        if (node.kind == NodeKind::kRelay) used.insert(node.tbs);
    }
    return used.size();
}

bool TrajectoryPlan::delivered_first() const {
    for (const auto& node : nodes) {
        if (node.kind == NodeKind::kDestination) return true;
        if (node.kind == NodeKind::kCluster) return false;
    }
    return false;
}

std::size_t TrajectoryPlan::served(ClusterType type) const { return serving.count(type); }

double bare_trip_energy(const Scene& scene, const PowerProfile& power) {
    const double L = distance(scene.source, scene.destination);
    return L * power.motion_energy_per_m(Load::kLoaded) + L * power.motion_energy_per_m(Load::kEmpty);
}

namespace {

std::vector<PlanNode> build_nodes(const RouteEvaluation& ev, const std::vector<double>& data,
                                  Point2D source, bool carry) {
    const auto& W = ev.route.waypoints;
    const std::size_t dest = ev.route.destination_index();
    std::vector<PlanNode> nodes;
    nodes.push_back({NodeKind::kSource, source, source, load_if(carry && dest != RouteCandidate::npos)});
    for (std::size_t k = 0; k < W.size(); ++k) {
        const Load load = load_if(loaded_after(k, dest, carry));
        const Waypoint& w = W[k];
        if (w.role == Role::kDestination) {
            nodes.push_back({NodeKind::kDestination, w.point, w.point, Load::kEmpty});
        } else if (w.role == Role::kSource) {
            nodes.push_back({NodeKind::kSource, w.point, w.point, load});
        } else {
            PlanNode node{NodeKind::kCluster, w.point, w.point, load};
            node.cluster = w.cluster;
            node.data = data.at(static_cast<std::size_t>(w.cluster));
            nodes.push_back(node);
        }
        if (k + 1 < W.size() && ev.dp.s[k] == 0) {
            const TbsAssociation& a = ev.associations[k];
            PlanNode relay{NodeKind::kRelay, a.point, a.point, load};
            relay.tbs = static_cast<int>(a.index);
            relay.stage = static_cast<int>(k);
            nodes.push_back(relay);
        }
    }
    assign_relay_data(nodes);
    return nodes;
}

HoverChain build_chain(const std::vector<PlanNode>& nodes, const ChannelModel& channel,
                       const PowerProfile& power, Objective objective) {
    const bool energy = objective == Objective::kMaxData;
    HoverChain chain;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const PlanNode& node = nodes[i];
        const bool serves = node.kind == NodeKind::kCluster || node.kind == NodeKind::kRelay;
        chain.targets.push_back(node.target);
        chain.movable.push_back(serves && i > 0 && i + 1 < nodes.size());
        chain.data.push_back(serves ? node.data : 0.0);
        chain.serve_weight.push_back(energy ? power.serve_power(node.load) : 1.0);
        if (node.kind == NodeKind::kCluster) {
            chain.unit_time.push_back([&channel](double d) { return channel.collect_time(d); });
        } else if (node.kind == NodeKind::kRelay) {
            chain.unit_time.push_back([&channel](double d) { return channel.forward_time(d); });
        } else {
            chain.unit_time.push_back({});
        }
        if (i + 1 < nodes.size()) {
            chain.move_weight.push_back(energy ? power.motion_energy_per_m(node.load)
                                               : 1.0 / power.velocity(node.load));
        }
    }
    return chain;
}

std::vector<Point2D> hovers_of(const std::vector<PlanNode>& nodes) {
    std::vector<Point2D> out;
    for (const auto& n : nodes) out.push_back(n.hover);
    return out;
}

void set_hovers(std::vector<PlanNode>& nodes, const std::vector<Point2D>& hovers) {
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].hover = hovers[i];
}

// Node of the lowest-priority cluster and the relay that forwards its data.
std::pair<std::size_t, std::size_t> end_pair(const std::vector<PlanNode>& nodes, int end_cluster) {
    std::size_t cluster = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].kind == NodeKind::kCluster && nodes[i].cluster == end_cluster) cluster = i;
        if (cluster < i && nodes[i].kind == NodeKind::kRelay) return {cluster, i};
    }
    throw ContractViolation("lowest-priority cluster has no relay after it");
}

// Energy of collecting and forwarding one more bit/Hz of the end cluster.
double end_unit_energy(const std::vector<PlanNode>& nodes, std::size_t cluster, std::size_t relay,
                       const ChannelModel& channel, const PowerProfile& power) {
    const PlanNode& c = nodes[cluster];
    const PlanNode& r = nodes[relay];
    return channel.collect_time(distance(c.hover, c.target)) * power.serve_power(c.load) +
           channel.forward_time(distance(r.hover, r.target)) * power.serve_power(r.load);
}

std::size_t pick_route(const std::vector<RouteEvaluation>& evals, Objective objective) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < evals.size(); ++i) {
        const bool better = objective == Objective::kMinTime ? evals[i].time < evals[best].time
                                                             : evals[i].energy < evals[best].energy;
        if (better) best = i;
    }
    return best;
}

}  // namespace

TrajectoryPlan plan_trajectory(const Scene& scene, int n1, int n2, const ChannelModel& channel,
                               const PowerProfile& power, const Demands& demands,
                               const PlannerOptions& options) {
    power.validate();
    const double budget = power.battery_j;
    if (options.carry_package && bare_trip_energy(scene, power) > budget) {
        throw InfeasibleTrip("the package round trip alone exceeds the battery");
    }

    TrajectoryPlan plan;
    plan.objective = options.objective;
    plan.carry_package = options.carry_package;
    plan.serving = select_serving_clusters(scene, n1, n2, demands);
    if (scene.tbs.empty()) {
        plan.dropped_clusters = static_cast<int>(plan.serving.size());
        plan.serving.clusters.clear();
    }
    if (plan.serving.size() > options.enumeration_cap) {
        throw EnumerationCapExceeded(plan.serving.size(), options.enumeration_cap);
    }

    std::vector<double> data;
    for (;;) {
        data.clear();
        for (const auto& c : plan.serving.clusters) data.push_back(c.demand_bithz);
        const auto routes = enumerate_routes(plan.serving, scene.source, scene.destination,
                                             options.carry_package, options.enumeration_cap);
        std::vector<RouteEvaluation> evals;
        evals.reserve(routes.size());
        for (const auto& r : routes) {
            evals.push_back(evaluate_route(r, data, scene.tbs, channel, power, options.carry_package));
        }
        plan.evaluation = std::move(evals[pick_route(evals, options.objective)]);
        plan.truncated = false;
        if (plan.evaluation.energy <= budget) break;
        if (plan.serving.size() == 0) {
            throw InfeasibleTrip("no cluster left to drop and the trip still exceeds the battery");
        }

        const int end = static_cast<int>(plan.serving.size()) - 1;
        const auto zero = build_nodes(plan.evaluation, data, scene.source, options.carry_package);
        const auto [c_node, r_node] = end_pair(zero, end);
        const ShortfallDecision decision =
            apply_energy_shortfall(plan.evaluation.energy, budget, data[static_cast<std::size_t>(end)],
                                   end_unit_energy(zero, c_node, r_node, channel, power));
        if (decision.action == ShortfallAction::kTruncate) {
            data[static_cast<std::size_t>(end)] = decision.end_data;
            plan.truncated = true;
            break;
        }
        plan.serving.clusters.pop_back();
        ++plan.dropped_clusters;
    }

    plan.nodes = build_nodes(plan.evaluation, data, scene.source, options.carry_package);
    const std::vector<PlanNode> zero_hover = plan.nodes;

    const HoverChain chain = build_chain(plan.nodes, channel, power, options.objective);
    if (options.optimize_hover) {
        const HoverResult hover = optimize_hover_points(chain, hovers_of(plan.nodes),
                                                        options.hover_epsilon, options.hover_max_sweeps);
        set_hovers(plan.nodes, hover.hovers);
        plan.hover_sweeps = hover.sweeps;
        plan.hover_trace = hover.objective_trace;
    }

    const bool has_data = !plan.serving.clusters.empty();
    const int end = static_cast<int>(plan.serving.size()) - 1;
    if (options.objective == Objective::kMaxData && has_data) {
        if (trip_ledger(plan.nodes, channel, power).energy() > budget) plan.nodes = zero_hover;
        const auto [c_node, r_node] = end_pair(plan.nodes, end);
        const ResidualResult extra = maximize_residual_data(chain, hovers_of(plan.nodes), c_node, r_node,
                                                            budget, !options.optimize_hover,
                                                            options.hover_epsilon, options.hover_max_sweeps);
        set_hovers(plan.nodes, extra.hovers);
        plan.nodes[c_node].data += extra.delta_data;
        assign_relay_data(plan.nodes);
        plan.residual_data = extra.delta_data;
        plan.residual_iterations = extra.iterations;
    } else if (has_data) {
        const double energy = trip_ledger(plan.nodes, channel, power).energy();
        if (energy > budget) {
            const auto [c_node, r_node] = end_pair(plan.nodes, end);
            const double cut = (energy - budget) / end_unit_energy(plan.nodes, c_node, r_node, channel, power);
            if (plan.nodes[c_node].data >= cut) {
                plan.nodes[c_node].data -= cut;
                assign_relay_data(plan.nodes);
                plan.truncated = true;
            } else {
                plan.nodes = zero_hover;
            }
        }
    }
    plan.ledger = trip_ledger(plan.nodes, channel, power);
    return plan;
}

std::string plan_to_json(const TrajectoryPlan& plan, int indent) {
    using nlohmann::ordered_json;
    auto point = [](Point2D p) { return ordered_json::array({p.x, p.y}); };
    ordered_json j;
    j["objective"] = std::string(to_string(plan.objective));
    j["carry_package"] = plan.carry_package;

    ordered_json serving = ordered_json::array();
    for (const auto& c : plan.serving.clusters) {
        serving.push_back({{"center", point(c.center)},
                           {"type", c.type == ClusterType::kTypeI ? "type1" : "type2"},
                           {"demand_bithz", c.demand_bithz}});
    }
    j["serving"] = serving;
    j["selection_shortfall"] = plan.serving.shortfall;
    j["dropped_clusters"] = plan.dropped_clusters;

    ordered_json route = ordered_json::array();
    for (const auto& w : plan.evaluation.route.waypoints) {
        route.push_back({{"role", std::string(to_string(w.role))}, {"point", point(w.point)}});
    }
    j["route"] = route;
    j["decisions"] = plan.evaluation.dp.s;
    ordered_json tbs = ordered_json::array();
    for (const auto& a : plan.evaluation.associations) tbs.push_back(point(a.point));
    j["tbs_points"] = tbs;

    ordered_json nodes = ordered_json::array();
    for (const auto& n : plan.nodes) {
        nodes.push_back({{"kind", std::string(to_string(n.kind))},
                         {"target", point(n.target)},
                         {"hover", point(n.hover)},
                         {"loaded", n.load == Load::kLoaded},
                         {"data_bithz", n.data}});
    }
    j["nodes"] = nodes;
    j["stage_forwarded_bithz"] = plan.ledger.stage_forwarded;
    j["zero_hover"] = {{"energy_j", plan.evaluation.energy}, {"time_s", plan.evaluation.time}};
    j["ledger"] = {{"t_col", plan.ledger.t_col},   {"t_del", plan.ledger.t_del},
                   {"t_tra", plan.ledger.t_tra},   {"e_col", plan.ledger.e_col},
                   {"e_del", plan.ledger.e_del},   {"e_tra", plan.ledger.e_tra},
                   {"time_s", plan.ledger.time()}, {"energy_j", plan.ledger.energy()},
                   {"collected_bithz", plan.ledger.collected_bithz},
                   {"delivered_bithz", plan.ledger.delivered_bithz}};
    j["truncated"] = plan.truncated;
    j["residual_data_bithz"] = plan.residual_data;
    j["hover_sweeps"] = plan.hover_sweeps;
    j["hover_objective_trace"] = plan.hover_trace;
    j["residual_iterations"] = plan.residual_iterations;
    return j.dump(indent);
}

}  // namespace skyplanner
