#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "skyplanner/errors.hpp"
#include "skyplanner/rng.hpp"
#include "skyplanner/stage_dp.hpp"

namespace skyplanner {
namespace {

StageProblem uniform(std::vector<double> demand, std::vector<double> detour, double per_unit) {
    StageProblem p;
    p.demand = std::move(demand);
    p.detour_energy = detour;
    p.detour_time = detour;
    p.forward_energy_per_unit.assign(p.demand.size(), per_unit);
    p.forward_time_per_unit.assign(p.demand.size(), per_unit);
    p.has_relay.assign(p.demand.size(), true);
    return p;
}

// Exhaustive minimum over all 2^K decision vectors.
double brute_force(const StageProblem& p, std::vector<int>* best_s = nullptr) {
    const std::size_t K = p.stages();
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << K); ++mask) {
        std::vector<int> s(K);
        for (std::size_t k = 0; k < K; ++k) s[k] = (mask >> k) & 1u;
        const StageEvaluation e = evaluate_decisions(p, s);
        if (e.feasible && e.energy < best) {
            best = e.energy;
            if (best_s) *best_s = s;
        }
    }
    return best;
}

TEST(StageDp, NothingToForward) {
    const StageSolution sol = tbs_decision_dp(uniform({0, 0, 0}, {10, 20, 30}, 5.0));
    EXPECT_EQ(sol.s, (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(sol.energy, 0.0);
}

TEST(StageDp, CarriesToTheCheaperDetour) {
    const StageSolution sol = tbs_decision_dp(uniform({100, 0}, {100, 50}, 1.0));
    EXPECT_EQ(sol.s, (std::vector<int>{1, 0}));
    EXPECT_EQ(sol.energy, 100.0 + 50.0);
    EXPECT_EQ(brute_force(uniform({100, 0}, {100, 50}, 1.0)), sol.energy);
}

TEST(StageDp, EqualsExhaustiveMinimum) {
    Engine rng(2024);
    std::uniform_int_distribution<int> stages(1, 8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int instance = 0; instance < 200; ++instance) {
        const int K = stages(rng);
        StageProblem p;
        for (int k = 0; k < K; ++k) {
            p.demand.push_back(u(rng) < 0.3 ? 0.0 : 3000.0 * u(rng));
            p.detour_energy.push_back(20000.0 * u(rng));
            p.detour_time.push_back(100.0 * u(rng));
            p.forward_energy_per_unit.push_back(10.0 + 30.0 * u(rng));
            p.forward_time_per_unit.push_back(0.1 * u(rng));
            p.has_relay.push_back(k + 1 == K || u(rng) > 0.15);
        }
        const StageSolution sol = tbs_decision_dp(p);
        EXPECT_EQ(sol.energy, brute_force(p)) << "instance " << instance;
        const StageEvaluation replay = evaluate_decisions(p, sol.s);
        EXPECT_TRUE(replay.feasible);
        EXPECT_EQ(replay.energy, sol.energy);
        EXPECT_EQ(replay.time, sol.time);
        double forwarded = 0.0;
        double total = 0.0;
        for (std::size_t k = 0; k < p.stages(); ++k) {
            forwarded += sol.forwarded[k];
            total += p.demand[k];
        }
        EXPECT_NEAR(forwarded, total, 1e-9 * std::max(1.0, total));
    }
}

TEST(StageDp, NoRelayForCollectedData) {
    StageProblem p = uniform({10, 0}, {1, 1}, 1.0);
    p.has_relay = {false, false};
    EXPECT_THROW(tbs_decision_dp(p), NoRelayAvailable);
    p.has_relay = {false, true};
    EXPECT_EQ(tbs_decision_dp(p).s, (std::vector<int>{1, 0}));
}

TEST(StageDp, EvaluateFlagsLeftoverData) {
    const StageProblem p = uniform({10, 5}, {1, 1}, 1.0);
    EXPECT_FALSE(evaluate_decisions(p, {0, 1}).feasible);
    EXPECT_TRUE(evaluate_decisions(p, {1, 0}).feasible);
    EXPECT_THROW(evaluate_decisions(p, {1}), InvalidParameter);
}

TEST(StageDp, RejectsInconsistentProblem) {
    StageProblem p = uniform({1, 2}, {1, 1}, 1.0);
    p.detour_time.pop_back();
    EXPECT_THROW(tbs_decision_dp(p), InvalidParameter);
}

}  // namespace
}  // namespace skyplanner
