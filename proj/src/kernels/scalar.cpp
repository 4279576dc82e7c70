#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace skyplanner::kernels::detail {

namespace {

inline double segment_distance_one(double px, double py, Point2D a, double dx, double dy,
                                   double inv_len2) {
    const double t_raw = ((px - a.x) * dx + (py - a.y) * dy) * inv_len2;
    const double t = std::min(std::max(t_raw, 0.0), 1.0);
    const double ex = px - (a.x + t * dx);
    const double ey = py - (a.y + t * dy);
    return std::sqrt(ex * ex + ey * ey);
}

inline double point_distance_one(double px, double py, Point2D a) {
    const double ex = px - a.x;
    const double ey = py - a.y;
    return std::sqrt(ex * ex + ey * ey);
}

}  // namespace

void segment_distances_scalar(const double* xs, const double* ys, std::size_t n, Point2D a,
                              Point2D b, double* out) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = point_distance_one(xs[i], ys[i], a);
        return;
    }
    const double inv_len2 = 1.0 / len2;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = segment_distance_one(xs[i], ys[i], a, dx, dy, inv_len2);
    }
}

void min_segment_distances_scalar(const double* xs, const double* ys, std::size_t n, Point2D a,
                                  Point2D b, double* inout) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            inout[i] = std::min(inout[i], point_distance_one(xs[i], ys[i], a));
        }
        return;
    }
    const double inv_len2 = 1.0 / len2;
    for (std::size_t i = 0; i < n; ++i) {
        inout[i] = std::min(inout[i], segment_distance_one(xs[i], ys[i], a, dx, dy, inv_len2));
    }
}

void circle_path_lengths_scalar(Point2D a, Point2D b, Point2D c, double radius,
                                const double* cos_t, const double* sin_t, std::size_t n,
                                double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double hx = c.x + radius * cos_t[i];
        const double hy = c.y + radius * sin_t[i];
        const double ax = a.x - hx;
        const double ay = a.y - hy;
        const double bx = b.x - hx;
        const double by = b.y - hy;
        out[i] = std::sqrt(ax * ax + ay * ay) + std::sqrt(bx * bx + by * by);
    }
}

}  // namespace skyplanner::kernels::detail
