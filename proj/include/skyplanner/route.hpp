#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "skyplanner/selection.hpp"

namespace skyplanner {

enum class Role { kCluster1, kCluster2, kDestination, kSource };

std::string_view to_string(Role role);

struct Waypoint {
    Point2D point;
    Role role;
    int cluster = -1;  // index into ServingSet::clusters for cluster roles
};

/// Visiting order after take-off from S. The last waypoint is always S.
struct RouteCandidate {
    std::vector<Waypoint> waypoints;

    /// Position of D in `waypoints`, or npos for data-only routes.
    std::size_t destination_index() const;
    std::vector<Point2D> points() const;
    std::string serialize() const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

inline constexpr std::size_t kDefaultEnumerationCap = 6;

/// Every ordering of the serving clusters (and D, when include_destination)
/// followed by S, in lexicographic order of the priority indices with D
/// ranked last. Throws EnumerationCapExceeded beyond `cap` clusters.
std::vector<RouteCandidate> enumerate_routes(const ServingSet& serving, Point2D source,
                                             Point2D destination, bool include_destination = true,
                                             std::size_t cap = kDefaultEnumerationCap);

}  // namespace skyplanner
