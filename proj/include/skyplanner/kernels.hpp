#pragma once

// Batched geometry kernels with a scalar reference implementation and an
// AVX2 variant picked at runtime. Both variants perform the same IEEE
// operations in the same order (no FMA contraction), so their outputs are
// bit-identical; tests/kernels_test.cpp holds them to that.

#include <cstddef>
#include <span>
#include <string_view>

#include "skyplanner/geometry.hpp"

namespace skyplanner::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
    Isa isa;

    /// out[i] = distance from (xs[i], ys[i]) to the closed segment [a, b].
    void (*segment_distances)(const double* xs, const double* ys, std::size_t n, Point2D a,
                              Point2D b, double* out);

    /// inout[i] = min(inout[i], distance from (xs[i], ys[i]) to [a, b]).
    void (*min_segment_distances)(const double* xs, const double* ys, std::size_t n, Point2D a,
                                  Point2D b, double* inout);

    /// out[i] = |a - h_i| + |b - h_i| with h_i = c + radius * (cos_t[i], sin_t[i]).
    void (*circle_path_lengths)(Point2D a, Point2D b, Point2D c, double radius,
                                const double* cos_t, const double* sin_t, std::size_t n,
                                double* out);
};

const KernelTable& scalar_table();

/// nullptr when the build or the running CPU lacks AVX2.
const KernelTable* avx2_table();

/// Table used by the library. Chosen once: AVX2 when available unless the
/// environment variable SKYPLANNER_ISA=scalar is set.
const KernelTable& active();

// Span conveniences over the active table.

void segment_distances(std::span<const double> xs, std::span<const double> ys, Point2D a,
                       Point2D b, std::span<double> out);

void min_segment_distances(std::span<const double> xs, std::span<const double> ys, Point2D a,
                           Point2D b, std::span<double> inout);

void circle_path_lengths(Point2D a, Point2D b, Point2D c, double radius,
                         std::span<const double> cos_t, std::span<const double> sin_t,
                         std::span<double> out);

}  // namespace skyplanner::kernels
