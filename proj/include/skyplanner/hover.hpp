#pragma once

#include <functional>
#include <vector>

#include "skyplanner/geometry.hpp"

namespace skyplanner {

/// Shortest A -> h -> B path with h on the circle of radius d around c.
struct Detour {
    Point2D h;
    double length;
};

/// Exact when the circle meets segment AB (length |A - B|); otherwise a
/// 256-angle scan refined by golden section to 1e-6 m of arc.
Detour min_detour(Point2D A, Point2D B, Point2D c, double d);

/// Cost weights: serving `data` at hover distance d costs data * T(d) * serve,
/// flying a meter costs `move`. Time objective: serve = 1, move = 1 / v.
/// Energy objective: serve = p_s, move = p_m / v.
struct HoverWeights {
    double serve;
    double move;
};

using UnitTimeFn = std::function<double(double)>;

struct HoverSubproblem {
    Point2D A;
    Point2D B;
    Point2D c;
    double data;
    HoverWeights weights;
    UnitTimeFn unit_time;
};

struct HoverSolution {
    Point2D h;
    double d;
    double detour;
    double objective;
};

/// argmin over d in [0, dist(c, AB)] of data * T(d) * serve + l*(d) * move,
/// by a 17-point seed grid and golden section (1e-3 m).
HoverSolution solve_single_hover(const HoverSubproblem& sub);

/// A closed chain of hover nodes. Node i serves data[i] around targets[i];
/// leg i joins node i and node i + 1. Fixed nodes (S, D) never move.
struct HoverChain {
    std::vector<Point2D> targets;
    std::vector<bool> movable;
    std::vector<double> data;
    std::vector<double> serve_weight;
    std::vector<double> move_weight;  // per leg, size targets.size() - 1
    std::vector<UnitTimeFn> unit_time;

    std::size_t size() const { return targets.size(); }
    void validate() const;
};

/// Sum of node service costs and leg travel costs at the given hover points.
double chain_objective(const HoverChain& chain, const std::vector<Point2D>& hovers);

struct HoverResult {
    std::vector<Point2D> hovers;
    int sweeps = 0;
    bool converged = false;
    std::vector<double> objective_trace;  // before the first sweep, then after each
};

inline constexpr double kHoverEpsilon = 0.1;
inline constexpr int kHoverMaxSweeps = 50;

/// Cyclic coordinate descent: each movable node is re-solved with its
/// neighbours fixed. A node is revisited only after a neighbour moved by more
/// than epsilon; descent stops when no node is pending or after max_sweeps.
/// An update is kept only if it does not raise the node's local cost.
HoverResult optimize_hover_points(const HoverChain& chain, std::vector<Point2D> start,
                                  double epsilon = kHoverEpsilon, int max_sweeps = kHoverMaxSweeps);

struct ResidualResult {
    double delta_data = 0.0;
    std::vector<Point2D> hovers;
    int iterations = 0;
    bool converged = true;
};

/// Spends the unused budget on extra data of the end cluster, which is
/// forwarded at the relay node. The chain must carry energy weights; its
/// current energy must not exceed budget_j. With pin_hovers the hover points
/// are kept and one step is taken; otherwise hover points of the two nodes are
/// re-optimized for the enlarged data until they move less than epsilon.
ResidualResult maximize_residual_data(const HoverChain& chain, const std::vector<Point2D>& hovers,
                                      std::size_t end_cluster, std::size_t relay, double budget_j,
                                      bool pin_hovers = false, double epsilon = kHoverEpsilon,
                                      int max_iterations = kHoverMaxSweeps);

}  // namespace skyplanner
