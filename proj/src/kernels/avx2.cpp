// Compiled with -mavx2 only; never called unless the CPU reports AVX2.
// FMA is deliberately not enabled so results match the scalar kernels bit
// for bit.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace skyplanner::kernels::detail {

namespace {

inline __m256d segment_distance4(__m256d px, __m256d py, __m256d ax, __m256d ay, __m256d dx,
                                 __m256d dy, __m256d inv_len2) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d rx = _mm256_sub_pd(px, ax);
    const __m256d ry = _mm256_sub_pd(py, ay);
    const __m256d dot = _mm256_add_pd(_mm256_mul_pd(rx, dx), _mm256_mul_pd(ry, dy));
    __m256d t = _mm256_mul_pd(dot, inv_len2);
    t = _mm256_min_pd(_mm256_max_pd(t, zero), one);
    const __m256d qx = _mm256_add_pd(ax, _mm256_mul_pd(t, dx));
    const __m256d qy = _mm256_add_pd(ay, _mm256_mul_pd(t, dy));
    const __m256d ex = _mm256_sub_pd(px, qx);
    const __m256d ey = _mm256_sub_pd(py, qy);
    return _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey)));
}

inline __m256d point_distance4(__m256d px, __m256d py, __m256d ax, __m256d ay) {
    const __m256d ex = _mm256_sub_pd(px, ax);
    const __m256d ey = _mm256_sub_pd(py, ay);
    return _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey)));
}

}  // namespace

void segment_distances_avx2(const double* xs, const double* ys, std::size_t n, Point2D a,
                            Point2D b, double* out) {
    const double dx_s = b.x - a.x;
    const double dy_s = b.y - a.y;
    const double len2 = dx_s * dx_s + dy_s * dy_s;
    const __m256d ax = _mm256_set1_pd(a.x);
    const __m256d ay = _mm256_set1_pd(a.y);
    std::size_t i = 0;
    if (len2 == 0.0) {
        for (; i + 4 <= n; i += 4) {
            const __m256d d = point_distance4(_mm256_loadu_pd(xs + i), _mm256_loadu_pd(ys + i), ax, ay);
            _mm256_storeu_pd(out + i, d);
        }
    } else {
        const __m256d dx = _mm256_set1_pd(dx_s);
        const __m256d dy = _mm256_set1_pd(dy_s);
        const __m256d inv = _mm256_set1_pd(1.0 / len2);
        for (; i + 4 <= n; i += 4) {
            const __m256d d = segment_distance4(_mm256_loadu_pd(xs + i), _mm256_loadu_pd(ys + i),
                                                ax, ay, dx, dy, inv);
            _mm256_storeu_pd(out + i, d);
        }
    }
    if (i < n) segment_distances_scalar(xs + i, ys + i, n - i, a, b, out + i);
}

void min_segment_distances_avx2(const double* xs, const double* ys, std::size_t n, Point2D a,
                                Point2D b, double* inout) {
    const double dx_s = b.x - a.x;
    const double dy_s = b.y - a.y;
    const double len2 = dx_s * dx_s + dy_s * dy_s;
    const __m256d ax = _mm256_set1_pd(a.x);
    const __m256d ay = _mm256_set1_pd(a.y);
    std::size_t i = 0;
    if (len2 == 0.0) {
        for (; i + 4 <= n; i += 4) {
            const __m256d d = point_distance4(_mm256_loadu_pd(xs + i), _mm256_loadu_pd(ys + i), ax, ay);
            _mm256_storeu_pd(inout + i, _mm256_min_pd(_mm256_loadu_pd(inout + i), d));
        }
    } else {
        const __m256d dx = _mm256_set1_pd(dx_s);
        const __m256d dy = _mm256_set1_pd(dy_s);
        const __m256d inv = _mm256_set1_pd(1.0 / len2);
        for (; i + 4 <= n; i += 4) {
            const __m256d d = segment_distance4(_mm256_loadu_pd(xs + i), _mm256_loadu_pd(ys + i),
                                                ax, ay, dx, dy, inv);
            _mm256_storeu_pd(inout + i, _mm256_min_pd(_mm256_loadu_pd(inout + i), d));
        }
    }
    if (i < n) min_segment_distances_scalar(xs + i, ys + i, n - i, a, b, inout + i);
}

void circle_path_lengths_avx2(Point2D a, Point2D b, Point2D c, double radius,
                              const double* cos_t, const double* sin_t, std::size_t n,
                              double* out) {
    const __m256d ax = _mm256_set1_pd(a.x);
    const __m256d ay = _mm256_set1_pd(a.y);
    const __m256d bx = _mm256_set1_pd(b.x);
    const __m256d by = _mm256_set1_pd(b.y);
    const __m256d cx = _mm256_set1_pd(c.x);
    const __m256d cy = _mm256_set1_pd(c.y);
    const __m256d r = _mm256_set1_pd(radius);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d hx = _mm256_add_pd(cx, _mm256_mul_pd(r, _mm256_loadu_pd(cos_t + i)));
        const __m256d hy = _mm256_add_pd(cy, _mm256_mul_pd(r, _mm256_loadu_pd(sin_t + i)));
        const __m256d dax = _mm256_sub_pd(ax, hx);
        const __m256d day = _mm256_sub_pd(ay, hy);
        const __m256d dbx = _mm256_sub_pd(bx, hx);
        const __m256d dby = _mm256_sub_pd(by, hy);
        const __m256d la = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dax, dax), _mm256_mul_pd(day, day)));
        const __m256d lb = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dbx, dbx), _mm256_mul_pd(dby, dby)));
        _mm256_storeu_pd(out + i, _mm256_add_pd(la, lb));
    }
    if (i < n) circle_path_lengths_scalar(a, b, c, radius, cos_t + i, sin_t + i, n - i, out + i);
}

}  // namespace skyplanner::kernels::detail
