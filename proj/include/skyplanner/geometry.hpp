#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "skyplanner/rng.hpp"

namespace skyplanner {

struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2D operator*(double s, Point2D p) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Point2D, Point2D) = default;
};

/// Strict (x, then y) ordering used for deterministic tie-breaks.
constexpr bool lexicographic_less(Point2D a, Point2D b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

inline double distance(Point2D a, Point2D b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

/// Euclidean distance from p to the closed segment [a, b]. A degenerate
/// segment (a == b) is the point a.
double point_to_segment_distance(Point2D p, Point2D a, Point2D b);

/// Closest point of the closed segment [a, b] to p.
Point2D closest_point_on_segment(Point2D p, Point2D a, Point2D b);

struct SceneParams {
    double lambda_tbs_km2 = 1.0;
    double lambda_type1_km2 = 1.0;
    double lambda_type2_km2 = 5.0;
    double sd_distance_m = 5000.0;
    double window_margin_m = 2000.0;
    double cluster_radius_m = 50.0;
    int devices_per_cluster = 20;

    /// Throws InvalidParameter when a field breaks its invariant.
    void validate() const;

    double window_area_km2() const {
        return (sd_distance_m + 2.0 * window_margin_m) * (2.0 * window_margin_m) * 1e-6;
    }
};

struct Scene {
    std::uint64_t seed = 0;
    Point2D source;
    Point2D destination;
    std::vector<Point2D> tbs;
    std::vector<Point2D> clusters1;
    std::vector<Point2D> clusters2;

    friend bool operator==(const Scene&, const Scene&) = default;
};

/// One realization of the three independent PPPs on the window
/// [-margin, L + margin] x [-margin, margin], with S = (0, 0) and D = (L, 0).
Scene sample_scene(const SceneParams& params, std::uint64_t seed);

/// n points uniform on the disk of radius r_c around center.
std::vector<Point2D> sample_devices(Point2D center, double r_c, int n, Engine& rng);

/// {"seed":..,"S":[x,y],"D":[x,y],"tbs":[[x,y],..],"clusters1":..,"clusters2":..}
/// Coordinates are printed with 6 decimals.
std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);

}  // namespace skyplanner
