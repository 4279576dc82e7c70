#include "skyplanner/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "skyplanner/errors.hpp"
#include "skyplanner/numerics.hpp"

namespace skyplanner {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Tolerances of the SNR-axis and device-axis quadratures.
constexpr double kGammaAbsTol = 1e-9;
constexpr double kGammaRelTol = 1e-7;
constexpr double kDeviceAbsTol = 1e-12;
constexpr double kDeviceRelTol = 1e-9;

double rate_weight(double gamma) { return std::numbers::ln2 / std::log1p(gamma); }

double mean_snr(double R, double tx_w, double eta, double alpha, const ChannelParams& p) {
    const double d2 = p.h_u_m * p.h_u_m + R * R;
    return tx_w * eta * std::pow(d2, -0.5 * alpha) / p.sigma2_w;
}

struct SnrWindow {
    double lo;
    double hi;
};

template <class Ccdf>
double upper_cutoff(Ccdf&& ccdf, double scale_hint) {
    if (ccdf(kGammaMin) <= kGammaTailMass) return kGammaMin;
    double lo = kGammaMin;
    double hi = std::max(scale_hint * 4.0, kGammaMin * 2.0);
    while (ccdf(hi) > kGammaTailMass) {
        lo = hi;
        hi *= 4.0;
        if (!std::isfinite(hi)) throw NumericIntegrationError("SNR upper cutoff diverged", kGammaMin, hi, 0.0, 0.0);
    }
    double log_lo = std::log(lo);
    double log_hi = std::log(hi);
    for (int i = 0; i < 200 && log_hi - log_lo > 1e-10; ++i) {
        const double mid = 0.5 * (log_lo + log_hi);
        if (ccdf(std::exp(mid)) > kGammaTailMass) {
            log_lo = mid;
        } else {
            log_hi = mid;
        }
    }
    return std::exp(log_hi);
}

double largest_mean(const SnrMixture& law) {
    double m = 0.0;
    for (const auto& part : law.parts) {
        if (part.weight > 0.0) m = std::max(m, part.mean_snr);
    }
    return m;
}

double component_cdf(const FadingComponent& c, double gamma) {
    if (c.mean_snr <= 0.0) return 1.0;
    return boost::math::gamma_p(static_cast<double>(c.shape), c.shape * gamma / c.mean_snr);
}

// E[g(clamp(SNR, lo, hi))] for a two-state law with g = 1/log2(1+x).
double unit_time_in_window(const SnrMixture& law, SnrWindow window) {
    double below = 0.0;
    double above = 0.0;
    for (const auto& part : law.parts) {
        if (part.weight <= 0.0) continue;
        below += part.weight * component_cdf(part, window.lo);
        above += part.weight * part.ccdf(window.hi);
    }
    double total = below * rate_weight(window.lo);
    if (window.hi > window.lo) {
        total += above * rate_weight(window.hi);
        const double u0 = std::log(window.lo);
        const double u1 = std::log(window.hi);
        std::vector<double> cuts{u0, u1};
        for (const auto& part : law.parts) {
            if (part.weight <= 0.0 || part.mean_snr <= 0.0) continue;
            const double centre = std::log(part.mean_snr);
            for (double offset : {-6.0, -3.0, -1.0, 0.0, 1.0, 2.5}) {
                const double u = centre + offset;
                if (u > u0 && u < u1) cuts.push_back(u);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        auto integrand = [&law](double u) {
            const double gamma = std::exp(u);
            return law.pdf(gamma) * gamma * rate_weight(gamma);
        };
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            total += numerics::integrate(integrand, cuts[i], cuts[i + 1], kGammaAbsTol, kGammaRelTol).value;
        }
    }
    return total;
}

double unit_time_of_law(const SnrMixture& law) {
    const double hi = upper_cutoff([&law](double g) { return law.ccdf(g); }, largest_mean(law));
    return unit_time_in_window(law, {kGammaMin, hi});
}

// r -> r on the arccos branch support (lo, hi) with a cosine map that
// flattens the square-root behaviour of the density at both ends.
double integrate_arccos_branch(double R, double r_c, double lo, double hi,
                               const std::function<double(double)>& g) {
    const double half_width = 0.5 * (hi - lo);
    auto integrand = [&](double t) {
        const double r = lo + half_width * (1.0 - std::cos(std::numbers::pi * t));
        const double jac = half_width * std::numbers::pi * std::sin(std::numbers::pi * t);
        if (r <= 0.0 || jac == 0.0) return 0.0;
        return device_distance_pdf(r, R, r_c) * g(r) * jac;
    };
    return numerics::integrate(integrand, 0.0, 1.0, kDeviceAbsTol, kDeviceRelTol).value;
}

}  // namespace

std::string_view to_string(CollectionModel model) {
    switch (model) {
        case CollectionModel::kMeanSnr: return "mean-snr";
        case CollectionModel::kSnrMixture: return "snr-mixture";
    }
    return "unknown";
}

CollectionModel collection_model_from_string(std::string_view name) {
    if (name == "mean-snr") return CollectionModel::kMeanSnr;
    if (name == "snr-mixture") return CollectionModel::kSnrMixture;
    throw InvalidParameter("unknown collection model '" + std::string(name) + "'");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void ChannelParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw InvalidParameter(std::string("channel parameters: ") + what);
    };
    require(m_los >= 1 && m_nlos >= 1, "Nakagami shapes must be integers >= 1");
    require(alpha_los >= 2.0 && alpha_nlos >= 2.0, "path-loss exponents must be >= 2");
    require(rho_iot_w > 0.0 && rho_uav_w > 0.0, "transmit powers must be > 0");
    require(sigma2_w > 0.0, "noise power must be > 0");
    require(h_u_m > 0.0, "UAV altitude must be > 0");
    require(r_c_m > 0.0, "cluster radius must be > 0");
    require(eta_los > 0.0 && eta_nlos > 0.0, "additional losses must be finite");
}

double los_probability(double R, const ChannelParams& p) {
    const double elevation_deg = kRadToDeg * std::atan2(p.h_u_m, std::max(R, 0.0));
    return 1.0 / (1.0 + p.a * std::exp(-p.b * (elevation_deg - p.a)));
}

double nlos_probability(double R, const ChannelParams& p) {
    const double elevation_deg = kRadToDeg * std::atan2(p.h_u_m, std::max(R, 0.0));
    return 1.0 / (1.0 + std::exp(p.b * (elevation_deg - p.a)) / p.a);
}

double device_distance_pdf(double r, double R_c2u, double r_c) {
    if (!(r > 0.0)) return 0.0;
    const double R = std::max(R_c2u, 0.0);
    if (R <= r_c && r < r_c - R) return 2.0 * r / (r_c * r_c);
    if (r > std::abs(R - r_c) && r < R + r_c && R > 0.0) {
        const double arg = std::clamp((R * R + r * r - r_c * r_c) / (2.0 * R * r), -1.0, 1.0);
        return 2.0 * r / (std::numbers::pi * r_c * r_c) * std::acos(arg);
    }
    return 0.0;
}

double expect_over_devices(double R_c2u, double r_c, const std::function<double(double)>& g) {
    const double R = std::max(R_c2u, 0.0);
    double total = 0.0;
    if (R <= r_c) {
        const double inner = r_c - R;
        if (inner > 0.0) {
            auto disk = [&](double r) { return 2.0 * r / (r_c * r_c) * g(r); };
            total += numerics::integrate(disk, 0.0, inner, kDeviceAbsTol, kDeviceRelTol).value;
        }
        if (R > 0.0) total += integrate_arccos_branch(R, r_c, inner, r_c + R, g);
    } else {
        total += integrate_arccos_branch(R, r_c, R - r_c, R + r_c, g);
    }
    return total;
}

double FadingComponent::ccdf(double gamma) const {
    if (mean_snr <= 0.0) return 0.0;
    if (gamma <= 0.0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(shape), shape * gamma / mean_snr);
}

double FadingComponent::pdf(double gamma) const {
    if (mean_snr <= 0.0 || gamma < 0.0) return 0.0;
    const double rate = shape / mean_snr;
    const double x = rate * gamma;
    if (x == 0.0) return shape == 1 ? rate : 0.0;
    // Gamma(shape, 1/rate) density, i.e. -d/dgamma of the Gamma-series CCDF.
    return rate * std::exp(-x + (shape - 1) * std::log(x) - std::lgamma(static_cast<double>(shape)));
}

double SnrMixture::ccdf(double gamma) const {
    double total = 0.0;
    for (const auto& part : parts) {
        if (part.weight > 0.0) total += part.weight * part.ccdf(gamma);
    }
    return total;
}

double SnrMixture::pdf(double gamma) const {
    double total = 0.0;
    for (const auto& part : parts) {
        if (part.weight > 0.0) total += part.weight * part.pdf(gamma);
    }
    return total;
}

SnrMixture point_snr_law(double R, double tx_w, const ChannelParams& p) {
    const double p_los = los_probability(R, p);
    SnrMixture law;
    law.parts[0] = {p_los, p.m_los, mean_snr(R, tx_w, p.eta_los, p.alpha_los, p)};
    law.parts[1] = {nlos_probability(R, p), p.m_nlos, mean_snr(R, tx_w, p.eta_nlos, p.alpha_nlos, p)};
    return law;
}

SnrMixture cluster_mean_snr_law(double R_c2u, const ChannelParams& p) {
    const double p_los = expect_over_devices(R_c2u, p.r_c_m, [&p](double r) { return los_probability(r, p); });
    const double los_power = expect_over_devices(R_c2u, p.r_c_m, [&p](double r) {
        return los_probability(r, p) * mean_snr(r, p.rho_iot_w, p.eta_los, p.alpha_los, p);
    });
    const double nlos_power = expect_over_devices(R_c2u, p.r_c_m, [&p](double r) {
        return nlos_probability(r, p) * mean_snr(r, p.rho_iot_w, p.eta_nlos, p.alpha_nlos, p);
    });
    const double p_nlos = expect_over_devices(R_c2u, p.r_c_m, [&p](double r) { return nlos_probability(r, p); });
    SnrMixture law;
    law.parts[0] = {p_los, p.m_los, p_los > 0.0 ? los_power / p_los : 0.0};
    law.parts[1] = {p_nlos, p.m_nlos, p_nlos > 0.0 ? nlos_power / p_nlos : 0.0};
    return law;
}

double coverage_probability(double gamma, LinkSpec link, const ChannelParams& params) {
    if (!(gamma > 0.0)) return 1.0;
    if (link.kind == LinkKind::kUavToTbs) {
        return point_snr_law(link.horizontal_distance_m, params.rho_uav_w, params).ccdf(gamma);
    }
    return expect_over_devices(link.horizontal_distance_m, params.r_c_m, [&](double r) {
        return point_snr_law(r, params.rho_iot_w, params).ccdf(gamma);
    });
}

double snr_pdf(double gamma, LinkSpec link, const ChannelParams& params) {
    if (!(gamma > 0.0)) return 0.0;
    if (link.kind == LinkKind::kUavToTbs) {
        return point_snr_law(link.horizontal_distance_m, params.rho_uav_w, params).pdf(gamma);
    }
    return expect_over_devices(link.horizontal_distance_m, params.r_c_m, [&](double r) {
        return point_snr_law(r, params.rho_iot_w, params).pdf(gamma);
    });
}

double device_unit_time(double r, const ChannelParams& params) {
    return unit_time_of_law(point_snr_law(r, params.rho_iot_w, params));
}

double unit_data_time(LinkSpec link, const ChannelParams& params, CollectionModel model) {
    const double R = std::max(link.horizontal_distance_m, 0.0);
    if (!std::isfinite(R)) throw InvalidParameter("unit_data_time needs a finite distance");
    if (link.kind == LinkKind::kUavToTbs) {
        return unit_time_of_law(point_snr_law(R, params.rho_uav_w, params));
    }
    if (model == CollectionModel::kMeanSnr) {
        return unit_time_of_law(cluster_mean_snr_law(R, params));
    }
    // Device-distance mixture: one SNR window for the whole cluster law, then
    // the expectation of the windowed per-device time.
    auto ccdf = [&](double gamma) {
        return expect_over_devices(R, params.r_c_m, [&](double r) {
            return point_snr_law(r, params.rho_iot_w, params).ccdf(gamma);
        });
    };
    const double hint = largest_mean(point_snr_law(std::max(0.0, R - params.r_c_m), params.rho_iot_w, params));
    const SnrWindow window{kGammaMin, upper_cutoff(ccdf, hint)};
    return expect_over_devices(R, params.r_c_m, [&](double r) {
        return unit_time_in_window(point_snr_law(r, params.rho_iot_w, params), window);
    });
}

double per_device_unit_time(Point2D uav, std::span<const Point2D> devices,
                            const ChannelParams& params) {
    if (devices.empty()) throw InvalidParameter("per-device unit time needs at least one device");
    double total = 0.0;
    for (const Point2D& device : devices) total += device_unit_time(distance(uav, device), params);
    return total / static_cast<double>(devices.size());
}

UnitTimeCache::UnitTimeCache(std::function<double(double)> exact, double step_m, double max_m)
    : exact_(std::move(exact)),
      step_(step_m),
      count_(static_cast<std::size_t>(std::ceil(max_m / step_m)) + 1),
      log_values_(std::make_unique<std::atomic<double>[]>(count_)) {
    for (std::size_t i = 0; i < count_; ++i) {
        log_values_[i].store(std::numeric_limits<double>::quiet_NaN(), std::memory_order_relaxed);
    }
}

double UnitTimeCache::node(std::size_t i) const {
    double v = log_values_[i].load(std::memory_order_acquire);
    if (std::isnan(v)) {
        v = std::log(exact_(step_ * static_cast<double>(i)));
        log_values_[i].store(v, std::memory_order_release);
    }
    return v;
}

double UnitTimeCache::operator()(double R) const {
    const double x = std::max(R, 0.0) / step_;
    if (x >= static_cast<double>(count_ - 1)) return exact_(R);
    const auto i = static_cast<std::size_t>(x);
    const double frac = x - static_cast<double>(i);
    if (frac == 0.0) return std::exp(node(i));
    return std::exp(node(i) + frac * (node(i + 1) - node(i)));
}

namespace {

constexpr double kCacheStep = 0.5;
constexpr double kCacheReach = 20000.0;

}  // namespace

ChannelModel::ChannelModel(ChannelParams params, CollectionModel model)
    : params_(params),
      model_(model),
      collect_([params, model](double R) {
          return unit_data_time({LinkKind::kClusterToUav, R}, params, model);
      }, kCacheStep, kCacheReach),
      forward_([params](double R) {
          return unit_data_time({LinkKind::kUavToTbs, R}, params);
      }, kCacheStep, kCacheReach) {
    params_.validate();
}

double ChannelModel::unit_time(LinkKind kind, double R) const {
    return kind == LinkKind::kClusterToUav ? collect_(R) : forward_(R);
}

}  // namespace skyplanner
