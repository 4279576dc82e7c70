#pragma once

#include <cstddef>

#include "skyplanner/kernels.hpp"

namespace skyplanner::kernels::detail {

void segment_distances_scalar(const double* xs, const double* ys, std::size_t n, Point2D a,
                              Point2D b, double* out);
void min_segment_distances_scalar(const double* xs, const double* ys, std::size_t n, Point2D a,
                                  Point2D b, double* inout);
void circle_path_lengths_scalar(Point2D a, Point2D b, Point2D c, double radius,
                                const double* cos_t, const double* sin_t, std::size_t n,
                                double* out);

#if defined(SKYPLANNER_HAVE_AVX2)
void segment_distances_avx2(const double* xs, const double* ys, std::size_t n, Point2D a,
                            Point2D b, double* out);
void min_segment_distances_avx2(const double* xs, const double* ys, std::size_t n, Point2D a,
                                Point2D b, double* inout);
void circle_path_lengths_avx2(Point2D a, Point2D b, Point2D c, double radius,
                              const double* cos_t, const double* sin_t, std::size_t n,
                              double* out);
#endif

}  // namespace skyplanner::kernels::detail
