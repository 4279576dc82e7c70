#pragma once

#include <cstddef>
#include <vector>

#include "skyplanner/geometry.hpp"

namespace skyplanner {

enum class ClusterType { kTypeI, kTypeII };

struct Demands {
    double type1_bithz = 2200.0;
    double type2_bithz = 600.0;

    double of(ClusterType type) const {
        return type == ClusterType::kTypeI ? type1_bithz : type2_bithz;
    }
};

struct ServedCluster {
    Point2D center;
    ClusterType type;
    double demand_bithz;
};

/// Selected clusters in priority order: all type-I picks, then all type-II
/// picks, each in greedy order. The last entry has the lowest priority.
struct ServingSet {
    std::vector<ServedCluster> clusters;
    int requested_n1 = 0;
    int requested_n2 = 0;
    bool shortfall = false;

    std::size_t size() const { return clusters.size(); }
    std::size_t count(ClusterType type) const;
    std::vector<Point2D> w1() const;
    std::vector<Point2D> w2() const;
};

/// Greedy priority selection. A candidate's distance is its minimum distance
/// to any segment joining two anchors, where the anchors are S, D and the
/// clusters selected so far (all of w1 while picking w2). Ties go to the
/// smaller x, then the smaller y.
ServingSet select_serving_clusters(const Scene& scene, int n1, int n2, const Demands& demands);

struct TbsAssociation {
    std::size_t index;  // into the TBS list
    Point2D point;
    double distance;    // from the TBS to the leg
};

/// Nearest TBS to each leg a -> b of `waypoints` taken pairwise:
/// legs[k] = (waypoints[k], waypoints[k + 1]). Ties go to the lexicographically
/// smaller TBS. Throws NoRelayAvailable when tbs is empty.
std::vector<TbsAssociation> nearest_tbs_per_segment(const std::vector<Point2D>& waypoints,
                                                    const std::vector<Point2D>& tbs);

}  // namespace skyplanner
