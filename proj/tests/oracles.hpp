#pragma once

// Reference implementations shared by the unit and acceptance tests. They are
// written from the model definitions, not from the library code.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "skyplanner/channel.hpp"
#include "skyplanner/rng.hpp"

namespace skyplanner::test {

// Composite 20-point Gauss-Legendre on a log axis: integral of f over
// [exp(u0), exp(u1)], panels a quarter of a log unit wide.
template <class F>
double log_axis_integral(F&& f, double u0, double u1) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    double total = 0.0;
    for (double a = u0; a < u1; a += 0.25) {
        const double b = std::min(a + 0.25, u1);
        total += Rule::integrate([&](double u) { return f(std::exp(u)) * std::exp(u); }, a, b);
    }
    return total;
}

inline double reference_los(double R, const ChannelParams& p) {
    const double theta = 180.0 / std::numbers::pi * std::atan(p.h_u_m / R);
    return 1.0 / (1.0 + p.a * std::exp(-p.b * (theta - p.a)));
}

// Draws SNR samples of a link: LoS state, then Gamma(m, 1/m) fading gain.
// For the cluster link the device is uniform in the disk of radius r_c
// centred R away from the UAV.
inline std::vector<double> snr_draws(LinkKind kind, double R, const ChannelParams& p, int n, std::uint64_t seed) {
    Engine rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::gamma_distribution<double> los_gain(p.m_los, 1.0 / p.m_los);
    std::gamma_distribution<double> nlos_gain(p.m_nlos, 1.0 / p.m_nlos);
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        double dist = R;
        double tx = p.rho_uav_w;
        if (kind == LinkKind::kClusterToUav) {
            const double rr = p.r_c_m * std::sqrt(u01(rng));
            const double th = 2.0 * std::numbers::pi * u01(rng);
            dist = std::hypot(R + rr * std::cos(th), rr * std::sin(th));
            tx = p.rho_iot_w;
        }
        const bool los = u01(rng) < reference_los(dist, p);
        const double eta = los ? p.eta_los : p.eta_nlos;
        const double alpha = los ? p.alpha_los : p.alpha_nlos;
        const double gain = los ? los_gain(rng) : nlos_gain(rng);
        out.push_back(tx * eta * gain * std::pow(p.h_u_m * p.h_u_m + dist * dist, -alpha / 2) / p.sigma2_w);
    }
    return out;
}

}  // namespace skyplanner::test
