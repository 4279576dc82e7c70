#pragma once

#include <array>
#include <atomic>
#include <functional>
#include <memory>
#include <span>
#include <string_view>

#include "skyplanner/geometry.hpp"

namespace skyplanner {

enum class LinkKind { kClusterToUav, kUavToTbs };

/// How the cluster-to-UAV unit time folds the device positions in.
///  kMeanSnr:    the per-state mean SNR is averaged over the cluster before the
///               fading expectation (expectation inside the logarithm).
///  kSnrMixture: the SNR law is the device-distance mixture of the per-device
///               laws, i.e. the expectation of the per-device unit time.
enum class CollectionModel { kMeanSnr, kSnrMixture };

std::string_view to_string(CollectionModel model);
CollectionModel collection_model_from_string(std::string_view name);

struct ChannelParams {
    double a = 4.9;
    double b = 0.43;
    double eta_los = 1.0;    // linear
    double eta_nlos = 0.01;  // linear
    double alpha_los = 2.1;
    double alpha_nlos = 4.0;
    int m_los = 3;
    int m_nlos = 1;
    double rho_iot_w = 1e-4;
    double rho_uav_w = 0.1;
    double sigma2_w = 1e-9;
    double h_u_m = 100.0;
    double r_c_m = 50.0;

    void validate() const;
};

double db_to_linear(double db);

struct LinkSpec {
    LinkKind kind;
    double horizontal_distance_m;
};

/// Probability of a line-of-sight link at horizontal distance R (elevation
/// angle atan(h_u / R), 90 degrees at R = 0).
double los_probability(double R, const ChannelParams& params);

/// 1 - los_probability, evaluated without cancellation near R = 0.
double nlos_probability(double R, const ChannelParams& params);

/// Density of the horizontal device-to-UAV distance for a device uniform on a
/// disk of radius r_c whose center is R_c2u away from the UAV.
double device_distance_pdf(double r, double R_c2u, double r_c);

/// E[g(r)] under device_distance_pdf(., R_c2u, r_c).
double expect_over_devices(double R_c2u, double r_c, const std::function<double(double)>& g);

/// One Nakagami state: Gamma(shape, mean/shape) distributed SNR with
/// probability `weight`.
struct FadingComponent {
    double weight = 0.0;
    int shape = 1;
    double mean_snr = 0.0;

    double ccdf(double gamma) const;
    double pdf(double gamma) const;
};

/// Two-state (LoS, NLoS) SNR law at a deterministic distance.
struct SnrMixture {
    std::array<FadingComponent, 2> parts;

    double ccdf(double gamma) const;
    double pdf(double gamma) const;
};

/// SNR law of a link of horizontal length R driven by transmit power tx_w.
SnrMixture point_snr_law(double R, double tx_w, const ChannelParams& params);

/// Cluster SNR law with the per-state mean SNR averaged over the devices.
SnrMixture cluster_mean_snr_law(double R_c2u, const ChannelParams& params);

/// CCDF of the SNR. uav-to-tbs: the Gamma-series mixture at distance R.
/// cluster-to-uav: that mixture integrated against device_distance_pdf.
double coverage_probability(double gamma, LinkSpec link, const ChannelParams& params);

/// Density of the SNR, the exact derivative of -coverage_probability.
double snr_pdf(double gamma, LinkSpec link, const ChannelParams& params);

/// Lower SNR cutoff of the unit-time integral.
inline constexpr double kGammaMin = 1e-6;
/// Tail mass allowed above the upper cutoff.
inline constexpr double kGammaTailMass = 1e-6;

/// Seconds * Hz per bit at horizontal distance R: E[1 / log2(1 + SNR)] with
/// the SNR clamped to [kGammaMin, gamma_max], gamma_max being the point
/// where the CCDF drops to kGammaTailMass.
double unit_data_time(LinkSpec link, const ChannelParams& params,
                      CollectionModel model = CollectionModel::kMeanSnr);

/// Unit time of a single device at horizontal distance r from the UAV.
double device_unit_time(double r, const ChannelParams& params);

/// Simulation mode: average per-device unit time over sampled devices with the
/// UAV hovering at `uav`. Each device sends an equal share of the demand, so
/// the cluster time is demand times this value.
double per_device_unit_time(Point2D uav, std::span<const Point2D> devices,
                            const ChannelParams& params);

/// Write-once memo of a positive, smooth function of distance on a uniform
/// grid; values in between are interpolated linearly in log space. Safe for
/// concurrent readers; a node is computed by whichever thread needs it first.
class UnitTimeCache {
public:
    UnitTimeCache(std::function<double(double)> exact, double step_m, double max_m);

    double operator()(double R) const;
    double exact(double R) const { return exact_(R); }

private:
    double node(std::size_t i) const;

    std::function<double(double)> exact_;
    double step_;
    std::size_t count_;
    std::unique_ptr<std::atomic<double>[]> log_values_;
};

/// Channel facade used by the planner: parameters plus cached unit times.
class ChannelModel {
public:
    explicit ChannelModel(ChannelParams params,
                          CollectionModel model = CollectionModel::kMeanSnr);

    const ChannelParams& params() const { return params_; }
    CollectionModel collection_model() const { return model_; }

    double unit_time(LinkKind kind, double R) const;
    double collect_time(double R) const { return collect_(R); }
    double forward_time(double R) const { return forward_(R); }

private:
    ChannelParams params_;
    CollectionModel model_;
    UnitTimeCache collect_;
    UnitTimeCache forward_;
};

}  // namespace skyplanner
