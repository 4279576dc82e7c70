#include <cassert>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace skyplanner::kernels {

namespace {

constexpr KernelTable kScalar{
    Isa::kScalar,
    &detail::segment_distances_scalar,
    &detail::min_segment_distances_scalar,
    &detail::circle_path_lengths_scalar,
};

#if defined(SKYPLANNER_HAVE_AVX2)
constexpr KernelTable kAvx2{
    Isa::kAvx2,
    &detail::segment_distances_avx2,
    &detail::min_segment_distances_avx2,
    &detail::circle_path_lengths_avx2,
};
#endif

bool cpu_has_avx2() {
#if defined(SKYPLANNER_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const KernelTable& choose() {
    if (const char* env = std::getenv("SKYPLANNER_ISA"); env && std::string(env) == "scalar") {
        return kScalar;
    }
    if (const KernelTable* t = avx2_table()) return *t;
    return kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::kScalar: return "scalar";
        case Isa::kAvx2: return "avx2";
    }
    return "unknown";
}

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(SKYPLANNER_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable& table = choose();
    return table;
}

void segment_distances(std::span<const double> xs, std::span<const double> ys, Point2D a,
                       Point2D b, std::span<double> out) {
    assert(xs.size() == ys.size() && out.size() >= xs.size());
    active().segment_distances(xs.data(), ys.data(), xs.size(), a, b, out.data());
}

void min_segment_distances(std::span<const double> xs, std::span<const double> ys, Point2D a,
                           Point2D b, std::span<double> inout) {
    assert(xs.size() == ys.size() && inout.size() >= xs.size());
    active().min_segment_distances(xs.data(), ys.data(), xs.size(), a, b, inout.data());
}

void circle_path_lengths(Point2D a, Point2D b, Point2D c, double radius,
                         std::span<const double> cos_t, std::span<const double> sin_t,
                         std::span<double> out) {
    assert(cos_t.size() == sin_t.size() && out.size() >= cos_t.size());
    active().circle_path_lengths(a, b, c, radius, cos_t.data(), sin_t.data(), cos_t.size(),
                                 out.data());
}

}  // namespace skyplanner::kernels
