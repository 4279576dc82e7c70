#include "skyplanner/hover.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "skyplanner/errors.hpp"
#include "skyplanner/kernels.hpp"
#include "skyplanner/numerics.hpp"

namespace skyplanner {

namespace {

constexpr std::size_t kScanAngles = 256;

struct AngleTable {
    std::array<double, kScanAngles> cos_t;
    std::array<double, kScanAngles> sin_t;

    AngleTable() {
        for (std::size_t i = 0; i < kScanAngles; ++i) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / kScanAngles;
            cos_t[i] = std::cos(theta);
            sin_t[i] = std::sin(theta);
        }
    }
};

const AngleTable& angles() {
    static const AngleTable table;
    return table;
}

double path_via(Point2D A, Point2D B, Point2D h) { return distance(A, h) + distance(h, B); }

}  // namespace

Detour min_detour(Point2D A, Point2D B, Point2D c, double d) {
    if (!(d >= 0.0)) throw InvalidParameter("hover distance must be >= 0");
    if (d == 0.0) return {c, path_via(A, B, c)};

    const Point2D ab = B - A;
    const double len2 = ab.x * ab.x + ab.y * ab.y;
    if (len2 > 0.0) {
        // Where the circle crosses the segment the detour is free.
        const double t0 = ((c.x - A.x) * ab.x + (c.y - A.y) * ab.y) / len2;
        const Point2D foot = A + t0 * ab;
        const double off_line = distance(c, foot);
        if (off_line <= d) {
            const double s = std::sqrt(std::max(0.0, d * d - off_line * off_line) / len2);
            constexpr double kSlack = 1e-12;
            for (double t : {t0 - s, t0 + s}) {
                if (t >= -kSlack && t <= 1.0 + kSlack) {
                    const double tc = std::clamp(t, 0.0, 1.0);
                    return {A + tc * ab, std::sqrt(len2)};
                }
            }
        }
    }

    const AngleTable& table = angles();
    std::array<double, kScanAngles> lengths;
    kernels::circle_path_lengths(A, B, c, d, table.cos_t, table.sin_t, lengths);
    const auto best = static_cast<std::size_t>(
        std::min_element(lengths.begin(), lengths.end()) - lengths.begin());

    const double step = 2.0 * std::numbers::pi / kScanAngles;
    const double centre = step * static_cast<double>(best);
    auto on_circle = [&](double theta) {
        return Point2D{c.x + d * std::cos(theta), c.y + d * std::sin(theta)};
    };
    const auto refined = numerics::golden_section(
        [&](double theta) { return path_via(A, B, on_circle(theta)); }, centre - step, centre + step,
        1e-6 / d);
    if (refined.value < lengths[best]) return {on_circle(refined.x), refined.value};
    return {on_circle(centre), lengths[best]};
}

HoverSolution solve_single_hover(const HoverSubproblem& sub) {
    if (sub.data < 0.0) throw InvalidParameter("hover data must be >= 0");
    const double d_max = point_to_segment_distance(sub.c, sub.A, sub.B);
    auto cost = [&](double d) {
        const double service = sub.data > 0.0 ? sub.data * sub.unit_time(d) * sub.weights.serve : 0.0;
        return service + min_detour(sub.A, sub.B, sub.c, d).length * sub.weights.move;
    };
    double d = 0.0;
    if (sub.data == 0.0) {
        d = d_max;
    } else if (d_max > 0.0) {
        d = numerics::seeded_golden_section(cost, 0.0, d_max, 17, 1e-3).x;
    }
    const Detour detour = min_detour(sub.A, sub.B, sub.c, d);
    return {detour.h, d, detour.length, cost(d)};
}

void HoverChain::validate() const {
    const std::size_t n = targets.size();
    if (n < 2 || movable.size() != n || data.size() != n || serve_weight.size() != n ||
        unit_time.size() != n || move_weight.size() != n - 1) {
        throw InvalidParameter("hover chain vectors are inconsistent");
    }
    if (movable.front() || movable.back()) throw InvalidParameter("chain endpoints must be fixed");
    for (std::size_t i = 0; i < n; ++i) {
        if (data[i] > 0.0 && !unit_time[i]) throw InvalidParameter("node with data lacks a unit-time model");
        if (movable[i] && move_weight[i - 1] != move_weight[i]) {
            throw ContractViolation("legs around a movable hover node must share their weight");
        }
    }
}

namespace {

double service_cost(const HoverChain& chain, std::size_t i, Point2D h) {
    if (chain.data[i] <= 0.0) return 0.0;
    return chain.data[i] * chain.unit_time[i](distance(h, chain.targets[i])) * chain.serve_weight[i];
}

double local_cost(const HoverChain& chain, const std::vector<Point2D>& hovers, std::size_t i,
                  Point2D h) {
    return service_cost(chain, i, h) + distance(hovers[i - 1], h) * chain.move_weight[i - 1] +
           distance(h, hovers[i + 1]) * chain.move_weight[i];
}

// Re-solves node i against its current neighbours; returns how far it moved.
double improve_node(const HoverChain& chain, std::vector<Point2D>& hovers, std::size_t i) {
    const HoverSubproblem sub{hovers[i - 1], hovers[i + 1], chain.targets[i], chain.data[i],
                              {chain.serve_weight[i], chain.move_weight[i]}, chain.unit_time[i]};
    const HoverSolution sol = solve_single_hover(sub);
    if (local_cost(chain, hovers, i, sol.h) > local_cost(chain, hovers, i, hovers[i])) return 0.0;
    const double moved = distance(sol.h, hovers[i]);
    hovers[i] = sol.h;
    return moved;
}

}  // namespace

double chain_objective(const HoverChain& chain, const std::vector<Point2D>& hovers) {
    double total = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        total += service_cost(chain, i, hovers[i]);
        if (i + 1 < chain.size()) total += distance(hovers[i], hovers[i + 1]) * chain.move_weight[i];
    }
    return total;
}

HoverResult optimize_hover_points(const HoverChain& chain, std::vector<Point2D> start,
                                  double epsilon, int max_sweeps) {
    chain.validate();
    if (start.size() != chain.size()) throw InvalidParameter("start hover count differs from chain size");
    HoverResult result;
    result.hovers = std::move(start);
    result.objective_trace.push_back(chain_objective(chain, result.hovers));

    std::vector<bool> pending = chain.movable;
    auto any_pending = [&pending] { return std::find(pending.begin(), pending.end(), true) != pending.end(); };
    while (result.sweeps < max_sweeps && any_pending()) {
        ++result.sweeps;
        for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
            if (!pending[i]) continue;
            pending[i] = false;
            if (improve_node(chain, result.hovers, i) > epsilon) {
                if (chain.movable[i - 1]) pending[i - 1] = true;
                if (chain.movable[i + 1]) pending[i + 1] = true;
            }
        }
        result.objective_trace.push_back(chain_objective(chain, result.hovers));
    }
    result.converged = !any_pending();
    return result;
}

ResidualResult maximize_residual_data(const HoverChain& chain, const std::vector<Point2D>& hovers,
                                      std::size_t end_cluster, std::size_t relay, double budget_j,
                                      bool pin_hovers, double epsilon, int max_iterations) {
    chain.validate();
    if (end_cluster >= chain.size() || relay >= chain.size() || end_cluster == relay) {
        throw InvalidParameter("residual data needs distinct cluster and relay nodes");
    }
    const double base = chain_objective(chain, hovers);
    const double slack = budget_j - base;
    if (slack < -1e-9 * budget_j) throw ContractViolation("energy budget already exceeded");

    ResidualResult result;
    result.hovers = hovers;
    if (slack <= 0.0) return result;

    auto unit_cost = [&](const std::vector<Point2D>& h) {
        return chain.unit_time[end_cluster](distance(h[end_cluster], chain.targets[end_cluster])) *
                   chain.serve_weight[end_cluster] +
               chain.unit_time[relay](distance(h[relay], chain.targets[relay])) * chain.serve_weight[relay];
    };
    auto extra_data = [&](const std::vector<Point2D>& h) {
        return (budget_j - chain_objective(chain, h)) / unit_cost(h);
    };

    result.delta_data = slack / unit_cost(hovers);
    result.iterations = 1;
    if (pin_hovers) return result;

    std::vector<Point2D> h = hovers;
    double delta = result.delta_data;
    result.converged = false;
    HoverChain enlarged = chain;
    for (int it = 0; it < max_iterations; ++it) {
        enlarged.data[end_cluster] = chain.data[end_cluster] + delta;
        enlarged.data[relay] = chain.data[relay] + delta;
        double moved = 0.0;
        for (std::size_t node : {std::min(end_cluster, relay), std::max(end_cluster, relay)}) {
            if (chain.movable[node]) moved = std::max(moved, improve_node(enlarged, h, node));
        }
        delta = extra_data(h);
        result.iterations = it + 2;
        if (moved < epsilon) {
            result.converged = true;
            break;
        }
    }
    if (delta > result.delta_data) {
        result.delta_data = delta;
        result.hovers = std::move(h);
    }
    return result;
}

}  // namespace skyplanner
