#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "skyplanner/channel.hpp"
#include "skyplanner/errors.hpp"
#include "skyplanner/numerics.hpp"
#include "oracles.hpp"

namespace skyplanner {
namespace {

const ChannelParams kDefaults;

using test::log_axis_integral;
using test::reference_los;
using test::snr_draws;

TEST(LosProbability, OverheadIsCertain) {
    EXPECT_LT(std::abs(1.0 - los_probability(0.0, kDefaults)), 1e-15);
}

TEST(LosProbability, MatchesDirectEvaluation) {
    EXPECT_NEAR(los_probability(100.0, kDefaults), reference_los(100.0, kDefaults), 1e-15);
    EXPECT_NEAR(los_probability(100.0, kDefaults), 0.9999998, 1e-7);
    EXPECT_NEAR(los_probability(1e4, kDefaults), 0.0308, 5e-4);
    for (double R : {0.0, 1.0, 50.0, 300.0, 5000.0}) {
        EXPECT_NEAR(los_probability(R, kDefaults) + nlos_probability(R, kDefaults), 1.0, 1e-15);
    }
}

TEST(DeviceDistancePdf, Examples) {
    EXPECT_DOUBLE_EQ(device_distance_pdf(25.0, 0.0, 50.0), 0.02);
    EXPECT_LT(device_distance_pdf(150.0 - 1e-9, 100.0, 50.0), 1e-5);
    EXPECT_EQ(device_distance_pdf(151.0, 100.0, 50.0), 0.0);
    EXPECT_EQ(device_distance_pdf(49.0, 100.0, 50.0), 0.0);
}

TEST(DeviceDistancePdf, NormalizesOnGrid) {
    boost::math::quadrature::tanh_sinh<double> oracle;
    for (double r_c : {25.0, 50.0, 100.0}) {
        for (int i = 0; i < 10; ++i) {
            const double R = 3.0 * r_c * i / 9.0;
            auto f = [&](double r) { return device_distance_pdf(r, R, r_c); };
            double total = 0.0;
            if (R <= r_c) {
                if (r_c - R > 0) total += oracle.integrate(f, 0.0, r_c - R);
                if (R > 0) total += oracle.integrate(f, r_c - R, r_c + R);
            } else {
                total += oracle.integrate(f, R - r_c, R + r_c);
            }
            EXPECT_NEAR(total, 1.0, 1e-6) << "R=" << R << " r_c=" << r_c;
            EXPECT_NEAR(expect_over_devices(R, r_c, [](double) { return 1.0; }), 1.0, 1e-9);
        }
    }
}

TEST(DeviceDistancePdf, MeanDistanceMatchesSampling) {
    Engine rng(4);
    for (double R : {0.0, 30.0, 120.0}) {
        const auto devices = sample_devices({R, 0.0}, 50.0, 200000, rng);
        double mean = 0.0;
        for (const Point2D& d : devices) mean += distance(d, {0, 0});
        mean /= devices.size();
        EXPECT_NEAR(expect_over_devices(R, 50.0, [](double r) { return r; }), mean, 0.2) << R;
    }
}

TEST(Coverage, Limits) {
    for (LinkKind kind : {LinkKind::kUavToTbs, LinkKind::kClusterToUav}) {
        EXPECT_NEAR(coverage_probability(1e-12, {kind, 40.0}, kDefaults), 1.0, 1e-9);
        EXPECT_LT(coverage_probability(1e15, {kind, 40.0}, kDefaults), 1e-12);
    }
}

TEST(Coverage, NonIncreasingInThreshold) {
    for (LinkKind kind : {LinkKind::kUavToTbs, LinkKind::kClusterToUav}) {
        double prev = 1.0;
        for (double g = 1e-3; g < 1e6; g *= 1.7) {
            const double c = coverage_probability(g, {kind, 75.0}, kDefaults);
            EXPECT_LE(c, prev + 1e-12);
            EXPECT_GE(c, 0.0);
            prev = c;
        }
    }
}

TEST(Coverage, MatchesFadingMonteCarloAtMeanSnr) {
    const double mean = kDefaults.rho_uav_w * kDefaults.eta_los * std::pow(kDefaults.h_u_m, -kDefaults.alpha_los) / kDefaults.sigma2_w;
    EXPECT_NEAR(mean, 6.31e3, 10.0);
    const auto draws = snr_draws(LinkKind::kUavToTbs, 0.0, kDefaults, 1000000, 21);
    double above = 0;
    for (double s : draws) above += s > mean;
    EXPECT_NEAR(coverage_probability(mean, {LinkKind::kUavToTbs, 0.0}, kDefaults), above / draws.size(), 1e-3);
}

TEST(SnrPdf, IntegratesToOneForBothLinks) {
    for (LinkKind kind : {LinkKind::kUavToTbs, LinkKind::kClusterToUav}) {
        const double total =
            log_axis_integral([&](double g) { return snr_pdf(g, {kind, 30.0}, kDefaults); }, -30.0, 25.0);
        EXPECT_NEAR(total, 1.0, 1e-4);
    }
}

TEST(SnrPdf, ReconstructsCoverage) {
    for (LinkKind kind : {LinkKind::kUavToTbs, LinkKind::kClusterToUav}) {
        for (int i = 0; i < 20; ++i) {
            const double g = std::pow(10.0, -2.0 + 6.0 * i / 19.0);
            const double tail =
                log_axis_integral([&](double x) { return snr_pdf(x, {kind, 30.0}, kDefaults); }, std::log(g), 25.0);
            EXPECT_NEAR(tail, coverage_probability(g, {kind, 30.0}, kDefaults), 1e-4) << g;
        }
    }
}

TEST(SnrPdf, RayleighCaseIsExponentialMixture) {
    ChannelParams p = kDefaults;
    p.m_los = p.m_nlos = 1;
    const double R = 120.0;
    const double pl = los_probability(R, p);
    const double d2 = p.h_u_m * p.h_u_m + R * R;
    const double mu_l = p.rho_uav_w * p.eta_los * std::pow(d2, -p.alpha_los / 2) / p.sigma2_w;
    const double mu_n = p.rho_uav_w * p.eta_nlos * std::pow(d2, -p.alpha_nlos / 2) / p.sigma2_w;
    for (double g : {0.0, 0.5, 10.0, 300.0, 2000.0}) {
        const double expected = pl / mu_l * std::exp(-g / mu_l) + (1 - pl) / mu_n * std::exp(-g / mu_n);
        if (g == 0.0) continue;
        EXPECT_NEAR(snr_pdf(g, {LinkKind::kUavToTbs, R}, p), expected, 1e-6 * std::max(1.0, expected));
    }
}

TEST(SnrPdf, IsMinusDerivativeOfCoverage) {
    for (double g : {0.3, 5.0, 80.0, 900.0}) {
        const double h = g * 1e-5;
        const LinkSpec link{LinkKind::kUavToTbs, 60.0};
        const double numeric =
            -(coverage_probability(g + h, link, kDefaults) - coverage_probability(g - h, link, kDefaults)) / (2 * h);
        EXPECT_NEAR(snr_pdf(g, link, kDefaults), numeric, 1e-6 * std::max(1.0, numeric) + 1e-9);
    }
}

TEST(UnitDataTime, NearShannonAtHighSnr) {
    const double t = unit_data_time({LinkKind::kUavToTbs, 0.0}, kDefaults);
    EXPECT_NEAR(t, 1.0 / std::log2(1.0 + 6.31e3), 0.05 * t);
}

TEST(UnitDataTime, MatchesFadingMonteCarlo) {
    for (LinkKind kind : {LinkKind::kUavToTbs, LinkKind::kClusterToUav}) {
        const auto draws = snr_draws(kind, 0.0, kDefaults, 400000, 33);
        double mc = 0.0;
        for (double s : draws) mc += 1.0 / std::log2(1.0 + std::max(s, kGammaMin));
        mc /= draws.size();
        const double t = unit_data_time({kind, 0.0}, kDefaults, CollectionModel::kSnrMixture);
        EXPECT_NEAR(t, mc, 0.01 * mc) << static_cast<int>(kind);
    }
}

TEST(UnitDataTime, NonDecreasingInDistance) {
    for (LinkKind kind : {LinkKind::kUavToTbs, LinkKind::kClusterToUav}) {
        for (CollectionModel model : {CollectionModel::kMeanSnr, CollectionModel::kSnrMixture}) {
            double prev = 0.0;
            for (int i = 0; i < 20; ++i) {
                const double R = 1000.0 * i / 19.0 + 4000.0 * (i == 19);
                const double t = unit_data_time({kind, R}, kDefaults, model);
                EXPECT_GT(t, 0.0);
                EXPECT_GE(t, prev) << "R=" << R;
                prev = t;
            }
        }
    }
}

TEST(UnitDataTime, VanishingNoiseGivesTinyTime) {
    ChannelParams p = kDefaults;
    p.sigma2_w = 1e-30;
    const double t = unit_data_time({LinkKind::kUavToTbs, 0.0}, p);
    EXPECT_GT(t, 0.0);
    EXPECT_LT(t, 0.02);
}

TEST(UnitDataTime, ClusterLinkSlowerThanUavLink) {
    EXPECT_GT(unit_data_time({LinkKind::kClusterToUav, 0.0}, kDefaults),
              unit_data_time({LinkKind::kUavToTbs, 0.0}, kDefaults));
}

TEST(UnitDataTime, IsPure) {
    const LinkSpec link{LinkKind::kClusterToUav, 77.0};
    EXPECT_EQ(unit_data_time(link, kDefaults), unit_data_time(link, kDefaults));
}

TEST(CollectionModels, PerDeviceSimulationAgreesWithMixture) {
    Engine rng = make_stream(5, Stream::kDevices);
    for (double R : {0.0, 60.0}) {
        const auto devices = sample_devices({R, 0.0}, kDefaults.r_c_m, 3000, rng);
        const double simulated = per_device_unit_time({0.0, 0.0}, devices, kDefaults);
        const double mixture = unit_data_time({LinkKind::kClusterToUav, R}, kDefaults, CollectionModel::kSnrMixture);
        EXPECT_NEAR(simulated, mixture, 0.03 * mixture) << R;
    }
    EXPECT_THROW(per_device_unit_time({0, 0}, {}, kDefaults), InvalidParameter);
}

TEST(CollectionModels, MeanSnrCloseToMixtureNearTheCluster) {
    for (double R : {0.0, 25.0, 50.0}) {
        const double a = unit_data_time({LinkKind::kClusterToUav, R}, kDefaults, CollectionModel::kMeanSnr);
        const double b = unit_data_time({LinkKind::kClusterToUav, R}, kDefaults, CollectionModel::kSnrMixture);
        EXPECT_NEAR(a, b, 0.05 * b) << R;
    }
    EXPECT_EQ(collection_model_from_string("snr-mixture"), CollectionModel::kSnrMixture);
    EXPECT_THROW(collection_model_from_string("x"), InvalidParameter);
}

TEST(ChannelParams, RejectsInvalidShapes) {
    ChannelParams p = kDefaults;
    p.m_nlos = 0;
    EXPECT_THROW(p.validate(), InvalidParameter);
    EXPECT_THROW(ChannelModel{p}, InvalidParameter);
    EXPECT_NEAR(db_to_linear(-20.0), 0.01, 1e-15);
}

TEST(UnitTimeCache, ExactAtNodesCloseBetween) {
    const ChannelModel model(kDefaults);
    for (double R : {0.0, 10.0, 120.5, 300.0}) {
        EXPECT_NEAR(model.forward_time(R), unit_data_time({LinkKind::kUavToTbs, R}, kDefaults), 1e-12 * model.forward_time(R));
    }
    for (double R : {0.2, 33.3, 140.7, 250.1}) {
        const double exact = unit_data_time({LinkKind::kClusterToUav, R}, kDefaults);
        EXPECT_NEAR(model.collect_time(R), exact, 1e-3 * exact) << R;
    }
    EXPECT_EQ(model.forward_time(25000.0), unit_data_time({LinkKind::kUavToTbs, 25000.0}, kDefaults));
}

TEST(UnitTimeCache, ConcurrentReadersSeeSameValues) {
    const ChannelModel model(kDefaults);
    std::vector<double> serial;
    for (int i = 0; i < 200; ++i) serial.push_back(ChannelModel(kDefaults).collect_time(i * 1.3));
    std::vector<std::vector<double>> seen(4);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            for (int i = 0; i < 200; ++i) seen[t].push_back(model.collect_time(i * 1.3));
        });
    }
    for (auto& th : threads) th.join();
    for (const auto& s : seen) EXPECT_EQ(s, serial);
}

TEST(Numerics, IntegrationFailureCarriesDiagnostics) {
    try {
        numerics::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12, 1e-12, 8);
        FAIL() << "expected NumericIntegrationError";
    } catch (const NumericIntegrationError& e) {
        EXPECT_EQ(e.lower(), 0.0);
        EXPECT_EQ(e.upper(), 1.0);
    }
}

TEST(Numerics, GoldenSectionFindsParabolaMinimum) {
    const auto m = numerics::golden_section([](double x) { return (x - 1.3) * (x - 1.3); }, 0.0, 4.0, 1e-9);
    EXPECT_NEAR(m.x, 1.3, 1e-8);
    const auto s = numerics::seeded_golden_section([](double x) { return std::cos(3 * x) + 0.1 * x; }, 0.0, 6.0, 17, 1e-9);
    // Global minimum of cos(3x) + 0.1x on [0, 6] is the first trough.
    EXPECT_NEAR(s.x, (std::numbers::pi - std::asin(0.1 / 3.0)) / 3.0, 1e-6);
}

}  // namespace
}  // namespace skyplanner
