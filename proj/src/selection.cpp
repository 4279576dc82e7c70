#include "skyplanner/selection.hpp"

#include <limits>

#include "skyplanner/errors.hpp"
#include "skyplanner/kernels.hpp"

namespace skyplanner {

std::size_t ServingSet::count(ClusterType type) const {
    std::size_t n = 0;
    for (const auto& c : clusters) n += c.type == type;
    return n;
}

std::vector<Point2D> ServingSet::w1() const {
    std::vector<Point2D> out;
    for (const auto& c : clusters) {
        if (c.type == ClusterType::kTypeI) out.push_back(c.center);
    }
    return out;
}

std::vector<Point2D> ServingSet::w2() const {
    std::vector<Point2D> out;
    for (const auto& c : clusters) {
        if (c.type == ClusterType::kTypeII) out.push_back(c.center);
    }
    return out;
}

namespace {

// Candidate pool with a running "distance to the nearest anchor segment".
class Pool {
public:
    explicit Pool(const std::vector<Point2D>& points)
        : points_(points), taken_(points.size(), false) {
        xs_.reserve(points.size());
        ys_.reserve(points.size());
        for (const Point2D& p : points) {
            xs_.push_back(p.x);
            ys_.push_back(p.y);
        }
        dist_.assign(points.size(), std::numeric_limits<double>::infinity());
    }

    void add_segment(Point2D a, Point2D b) {
        kernels::min_segment_distances(xs_, ys_, a, b, dist_);
    }

    // Index of the best untaken candidate, or npos when exhausted.
    std::size_t best() const {
        std::size_t best = npos;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (taken_[i]) continue;
            if (best == npos || dist_[i] < dist_[best] ||
                (dist_[i] == dist_[best] && lexicographic_less(points_[i], points_[best]))) {
                best = i;
            }
        }
        return best;
    }

    void take(std::size_t i) { taken_[i] = true; }
    Point2D point(std::size_t i) const { return points_[i]; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    const std::vector<Point2D>& points_;
    std::vector<bool> taken_;
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> dist_;
};

// Adds `count` greedy picks from `pool` to `serving`, growing `anchors`.
void pick(Pool& pool, std::vector<Point2D>& anchors, int count, ClusterType type,
          const Demands& demands, ServingSet& serving) {
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        for (std::size_t j = i + 1; j < anchors.size(); ++j) pool.add_segment(anchors[i], anchors[j]);
    }
    for (int n = 0; n < count; ++n) {
        const std::size_t best = pool.best();
        if (best == Pool::npos) {
            serving.shortfall = true;
            return;
        }
        pool.take(best);
        const Point2D chosen = pool.point(best);
        serving.clusters.push_back({chosen, type, demands.of(type)});
        for (const Point2D& anchor : anchors) pool.add_segment(anchor, chosen);
        anchors.push_back(chosen);
    }
}

}  // namespace

ServingSet select_serving_clusters(const Scene& scene, int n1, int n2, const Demands& demands) {
    if (n1 < 0 || n2 < 0) throw InvalidParameter("cluster counts must be >= 0");
    ServingSet serving;
    serving.requested_n1 = n1;
    serving.requested_n2 = n2;

    std::vector<Point2D> anchors{scene.source, scene.destination};
    Pool type1(scene.clusters1);
    pick(type1, anchors, n1, ClusterType::kTypeI, demands, serving);

    // Type-II distances are measured against the full type-I selection, so
    // the pool starts fresh with every anchor pair known at this point.
    Pool type2(scene.clusters2);
    pick(type2, anchors, n2, ClusterType::kTypeII, demands, serving);
    return serving;
}

std::vector<TbsAssociation> nearest_tbs_per_segment(const std::vector<Point2D>& waypoints,
                                                    const std::vector<Point2D>& tbs) {
    if (tbs.empty()) throw NoRelayAvailable("no TBS in the scene to relay data");
    if (waypoints.size() < 2) throw InvalidParameter("a route needs at least two waypoints");
    std::vector<double> xs(tbs.size());
    std::vector<double> ys(tbs.size());
    for (std::size_t i = 0; i < tbs.size(); ++i) {
        xs[i] = tbs[i].x;
        ys[i] = tbs[i].y;
    }
    std::vector<double> dist(tbs.size());
    std::vector<TbsAssociation> out;
    out.reserve(waypoints.size() - 1);
    for (std::size_t k = 0; k + 1 < waypoints.size(); ++k) {
        kernels::segment_distances(xs, ys, waypoints[k], waypoints[k + 1], dist);
        std::size_t best = 0;
        for (std::size_t i = 1; i < tbs.size(); ++i) {
            if (dist[i] < dist[best] || (dist[i] == dist[best] && lexicographic_less(tbs[i], tbs[best]))) {
                best = i;
            }
        }
        out.push_back({best, tbs[best], dist[best]});
    }
    return out;
}

}  // namespace skyplanner
