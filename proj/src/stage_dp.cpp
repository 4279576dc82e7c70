#include "skyplanner/stage_dp.hpp"

#include <limits>

#include "skyplanner/errors.hpp"

namespace skyplanner {

void StageProblem::validate() const {
    const std::size_t k = demand.size();
    if (detour_energy.size() != k || detour_time.size() != k || forward_energy_per_unit.size() != k ||
        forward_time_per_unit.size() != k || has_relay.size() != k) {
        throw InvalidParameter("stage problem vectors differ in length");
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (demand[i] < 0.0 || detour_energy[i] < 0.0 || detour_time[i] < 0.0 ||
            forward_energy_per_unit[i] < 0.0 || forward_time_per_unit[i] < 0.0) {
            throw InvalidParameter("stage problem entries must be >= 0");
        }
    }
}

StageEvaluation evaluate_decisions(const StageProblem& p, const std::vector<int>& s) {
    const std::size_t K = p.stages();
    if (s.size() != K) throw InvalidParameter("decision vector length differs from stage count");
    StageEvaluation out;
    out.forwarded.assign(K, 0.0);
    double carried = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double buffer = carried + p.demand[k];
        if (s[k] == 0) {
            if (!p.has_relay[k]) return out;
            out.forwarded[k] = buffer;
            out.energy += buffer * p.forward_energy_per_unit[k] + p.detour_energy[k];
            out.time += buffer * p.forward_time_per_unit[k] + p.detour_time[k];
            carried = 0.0;
        } else {
            carried = buffer;
        }
    }
    out.feasible = carried == 0.0;
    return out;
}

StageSolution tbs_decision_dp(const StageProblem& p) {
    p.validate();
    const std::size_t K = p.stages();
    constexpr double kInf = std::numeric_limits<double>::infinity();

    // best[j]: cheapest cost of stages 1..j given a flush at stage j (best[0]
    // is the empty prefix). prev[j]: the flush before it.
    std::vector<double> best(K + 1, kInf);
    std::vector<std::size_t> prev(K + 1, 0);
    best[0] = 0.0;
    for (std::size_t k = 1; k <= K; ++k) {
        if (!p.has_relay[k - 1]) continue;
        for (std::size_t j = 0; j < k; ++j) {
            if (best[j] == kInf) continue;
            double buffer = 0.0;
            for (std::size_t i = j; i < k; ++i) buffer = buffer + p.demand[i];
            const double cost = best[j] + (buffer * p.forward_energy_per_unit[k - 1] + p.detour_energy[k - 1]);
            if (cost < best[k]) {
                best[k] = cost;
                prev[k] = j;
            }
        }
    }

    // The last flush must leave nothing behind: every later demand is zero.
    std::size_t last = K + 1;
    double best_total = kInf;
    double tail = 0.0;
    for (std::size_t j = K + 1; j-- > 0;) {
        if (j < K) tail += p.demand[j];
        if (tail > 0.0) break;
        if (best[j] < best_total) {
            best_total = best[j];
            last = j;
        }
    }
    if (last == K + 1) throw NoRelayAvailable("collected data cannot reach any TBS on this route");

    std::vector<int> s(K, 1);
    for (std::size_t j = last; j > 0; j = prev[j]) s[j - 1] = 0;

    const StageEvaluation eval = evaluate_decisions(p, s);
    return {std::move(s), eval.energy, eval.time, eval.forwarded};
}

}  // namespace skyplanner
