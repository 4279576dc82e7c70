#pragma once

namespace skyplanner {

/// Carrying state of the UAV on a leg or while hovering.
enum class Load { kLoaded, kEmpty };

struct PowerProfile {
    double p_motion_loaded_w = 193.0;
    double p_motion_empty_w = 159.0;
    double p_serve_loaded_w = 252.0;
    double p_serve_empty_w = 178.0;
    double v_loaded_mps = 20.0;
    double v_empty_mps = 18.0;
    double battery_j = 177.6 * 3600.0;
    double payload_kg = 1.0;

    void validate() const;

    double motion_power(Load load) const {
        return load == Load::kLoaded ? p_motion_loaded_w : p_motion_empty_w;
    }
    double serve_power(Load load) const {
        return load == Load::kLoaded ? p_serve_loaded_w : p_serve_empty_w;
    }
    double velocity(Load load) const {
        return load == Load::kLoaded ? v_loaded_mps : v_empty_mps;
    }
    /// Joules per meter of flight.
    double motion_energy_per_m(Load load) const { return motion_power(load) / velocity(load); }
};

/// Rotary-wing power model constants. The defaults describe a ~2 kg
/// quadrotor; induced quantities scale with the total weight.
struct RotorParams {
    double P0 = 79.86;        // blade profile power in hover, W
    double Pi = 88.63;        // induced power in hover, W
    double U_tip = 120.0;     // m/s
    double v0 = 4.03;         // mean induced velocity in hover, m/s
    double d0 = 0.6;          // fuselage drag ratio
    double rho_air = 1.225;   // kg/m^3
    double s_solidity = 0.05;
    double A_disc = 0.503;    // m^2
    double reference_weight_kg = 2.0;

    void validate() const;
};

/// Propulsion power at forward speed V.
double rotor_power(double V, const RotorParams& rotor);

/// Rotor constants with induced power and velocity rescaled from the
/// reference weight to total_weight_kg (Pi ~ W^1.5, v0 ~ W^0.5).
RotorParams scaled_for_weight(const RotorParams& rotor, double total_weight_kg);

/// argmin over V in (0, v_cap] of rotor_power(V) / V for the rotor scaled to
/// total_weight_kg, to 1e-3 m/s.
double optimal_velocity(const RotorParams& rotor, double total_weight_kg, double v_cap = 60.0);

/// Power profile derived from a rotor model: hover power for serving and the
/// optimal-velocity cruise power for motion, with and without the payload.
PowerProfile profile_from_rotor(const RotorParams& rotor, double empty_weight_kg,
                                double payload_kg, double battery_j);

}  // namespace skyplanner
