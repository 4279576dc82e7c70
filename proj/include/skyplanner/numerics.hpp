#pragma once

#include <cmath>
#include <functional>

namespace skyplanner::numerics {

struct Minimum {
    double x;
    double value;
};

/// Golden-section search for a minimum of f on [lo, hi], stopping once the
/// bracket is narrower than tol. Assumes f is unimodal on the bracket.
template <class F>
Minimum golden_section(F&& f, double lo, double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

/// Global-ish minimization on [lo, hi]: a uniform seed grid of `seeds`
/// points (endpoints and midpoint included when seeds is odd), then golden
/// section inside the bracket around the best seed. The result is never
/// worse than the best seed.
template <class F>
Minimum seeded_golden_section(F&& f, double lo, double hi, int seeds, double tol) {
    if (!(hi > lo)) return {lo, f(lo)};
    int best = 0;
    double best_value = 0.0;
    const double step = (hi - lo) / (seeds - 1);
    for (int i = 0; i < seeds; ++i) {
        const double x = i + 1 == seeds ? hi : lo + step * i;
        const double v = f(x);
        if (i == 0 || v < best_value) {
            best = i;
            best_value = v;
        }
    }
    const double best_x = best + 1 == seeds ? hi : lo + step * best;
    const double a = best == 0 ? lo : lo + step * (best - 1);
    const double b = best + 1 >= seeds ? hi : lo + step * (best + 1);
    const Minimum refined = golden_section(f, a, std::min(b, hi), tol);
    if (refined.value < best_value) return refined;
    return {best_x, best_value};
}

struct Integral {
    double value;
    double error;
};

/// Adaptive Gauss-Kronrod (15-point) quadrature on [a, b]. Stops when the
/// error estimate is below max(abs_tol, rel_tol * |value|). Throws
/// NumericIntegrationError if the tolerance is not met within max_depth
/// bisections.
Integral integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                   double rel_tol, unsigned max_depth = 18);

}  // namespace skyplanner::numerics
