#include "skyplanner/energy.hpp"

#include <cmath>
#include <string>

#include "skyplanner/errors.hpp"
#include "skyplanner/numerics.hpp"

namespace skyplanner {

void PowerProfile::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw InvalidParameter(std::string("power profile: ") + what);
    };
    require(p_motion_loaded_w > 0.0 && p_motion_empty_w > 0.0, "motion powers must be > 0");
    require(p_serve_loaded_w > 0.0 && p_serve_empty_w > 0.0, "serving powers must be > 0");
    require(v_loaded_mps > 0.0 && v_empty_mps > 0.0, "velocities must be > 0");
    require(battery_j > 0.0, "battery capacity must be > 0");
    require(payload_kg >= 0.0, "payload must be >= 0");
}

void RotorParams::validate() const {
    const bool ok = P0 > 0.0 && Pi >= 0.0 && U_tip > 0.0 && v0 > 0.0 && d0 >= 0.0 &&
                    rho_air > 0.0 && s_solidity > 0.0 && A_disc > 0.0 && reference_weight_kg > 0.0;
    if (!ok) throw InvalidParameter("rotor parameters must be positive");
}

double rotor_power(double V, const RotorParams& r) {
    if (V < 0.0) throw InvalidParameter("rotor_power needs V >= 0");
    const double v2 = V * V;
    const double v0_2 = r.v0 * r.v0;
    const double blade = r.P0 * (1.0 + 3.0 * v2 / (r.U_tip * r.U_tip));
    const double induced =
        r.Pi * std::sqrt(std::sqrt(1.0 + v2 * v2 / (4.0 * v0_2 * v0_2)) - v2 / (2.0 * v0_2));
    const double parasite = 0.5 * r.d0 * r.rho_air * r.s_solidity * r.A_disc * v2 * V;
    return blade + induced + parasite;
}

RotorParams scaled_for_weight(const RotorParams& rotor, double total_weight_kg) {
    if (!(total_weight_kg > 0.0)) throw InvalidParameter("total weight must be > 0");
    RotorParams out = rotor;
    const double ratio = total_weight_kg / rotor.reference_weight_kg;
    out.Pi = rotor.Pi * std::pow(ratio, 1.5);
    out.v0 = rotor.v0 * std::sqrt(ratio);
    return out;
}

double optimal_velocity(const RotorParams& rotor, double total_weight_kg, double v_cap) {
    rotor.validate();
    if (!(v_cap > 0.0)) throw InvalidParameter("velocity cap must be > 0");
    const RotorParams r = scaled_for_weight(rotor, total_weight_kg);
    auto per_meter = [&r](double V) { return rotor_power(V, r) / V; };
    // p(V)/V blows up at 0; start the scan a hair above it.
    const double lo = std::min(1e-3, 0.5 * v_cap);
    return numerics::seeded_golden_section(per_meter, lo, v_cap, 257, 1e-4).x;
}

PowerProfile profile_from_rotor(const RotorParams& rotor, double empty_weight_kg,
                                double payload_kg, double battery_j) {
    const double loaded_kg = empty_weight_kg + payload_kg;
    const RotorParams loaded = scaled_for_weight(rotor, loaded_kg);
    const RotorParams empty = scaled_for_weight(rotor, empty_weight_kg);
    PowerProfile p;
    p.v_loaded_mps = optimal_velocity(rotor, loaded_kg);
    p.v_empty_mps = optimal_velocity(rotor, empty_weight_kg);
    p.p_motion_loaded_w = rotor_power(p.v_loaded_mps, loaded);
    p.p_motion_empty_w = rotor_power(p.v_empty_mps, empty);
    p.p_serve_loaded_w = rotor_power(0.0, loaded);
    p.p_serve_empty_w = rotor_power(0.0, empty);
    p.battery_j = battery_j;
    p.payload_kg = payload_kg;
    p.validate();
    return p;
}

}  // namespace skyplanner
