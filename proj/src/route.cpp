#include "skyplanner/route.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "skyplanner/errors.hpp"

namespace skyplanner {

std::string_view to_string(Role role) {
    switch (role) {
        case Role::kCluster1: return "cluster1";
        case Role::kCluster2: return "cluster2";
        case Role::kDestination: return "destination";
        case Role::kSource: return "source";
    }
    return "unknown";
}

std::size_t RouteCandidate::destination_index() const {
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
        if (waypoints[i].role == Role::kDestination) return i;
    }
    return npos;
}

std::vector<Point2D> RouteCandidate::points() const {
    std::vector<Point2D> out;
    out.reserve(waypoints.size());
    for (const auto& w : waypoints) out.push_back(w.point);
    return out;
}

std::string RouteCandidate::serialize() const {
    std::string out;
    char buf[96];
    for (const auto& w : waypoints) {
        std::snprintf(buf, sizeof buf, "%s(%.6f,%.6f);", std::string(to_string(w.role)).c_str(),
                      w.point.x, w.point.y);
        out += buf;
    }
    return out;
}

std::vector<RouteCandidate> enumerate_routes(const ServingSet& serving, Point2D source,
                                             Point2D destination, bool include_destination,
                                             std::size_t cap) {
    const std::size_t n = serving.size();
    if (n > cap) throw EnumerationCapExceeded(n, cap);

    const std::size_t items = n + (include_destination ? 1 : 0);
    std::vector<std::size_t> order(items);
    std::iota(order.begin(), order.end(), 0);

    std::vector<RouteCandidate> routes;
    do {
        RouteCandidate route;
        route.waypoints.reserve(items + 1);
        for (std::size_t idx : order) {
            if (idx == n) {
                route.waypoints.push_back({destination, Role::kDestination, -1});
            } else {
                const auto& c = serving.clusters[idx];
                const Role role = c.type == ClusterType::kTypeI ? Role::kCluster1 : Role::kCluster2;
                route.waypoints.push_back({c.center, role, static_cast<int>(idx)});
            }
        }
        route.waypoints.push_back({source, Role::kSource, -1});
        routes.push_back(std::move(route));
    } while (std::next_permutation(order.begin(), order.end()));
    return routes;
}

}  // namespace skyplanner
