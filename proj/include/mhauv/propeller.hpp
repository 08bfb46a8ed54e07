#pragma once

#include <array>

#include "mhauv/types.hpp"

namespace mhauv {

/// Depth-dependent thrust law T = C_T(h) * omega^2 * D^4.
///
/// Units: omega in rpm, D in metres, T in newtons, immersion h in millimetres
/// (h > 0 means the rotor centre is below the surface). Between the two
/// breakpoints log C_T is linear in h.
struct ThrustModel {
    double ct_air = 1.5e-9;
    double ct_water = 1.3e-6;
    double h_air_mm = -50.0;
    double h_water_mm = 100.0;
    double diameter = 0.127;     // [m]
    double torque_ratio = 0.01;  // rotor drag torque per newton of thrust [m]
    double omega_max = 2.5e6;    // [rpm]

    void validate() const;
};

/// Rotors 1 and 3 spin CCW, 2 and 4 CW.
struct RotorCommand {
    std::array<double, 4> omega{};  // [rpm]
};

/// Collective thrust along body +z and body torques, plus the rotor speeds
/// that realise them.
struct ControlOutput {
    double thrust = 0.0;          // T_z [N]
    Vec3 torque = Vec3::Zero();   // tau_x, tau_y, tau_z [N m]
    RotorCommand rotor_command;
    double gyro_speed = 0.0;      // W_G [rad/s]
};

struct Allocation {
    RotorCommand command;
    std::array<double, 4> thrusts{};
    ControlOutput achieved;
    bool saturated = false;
};

[[nodiscard]] double thrust_coefficient(double h_mm, const ThrustModel& model = {});

[[nodiscard]] double rotor_thrust(double omega_rpm, double h_mm, const ThrustModel& model);

/// Body-frame position of rotor `index` (0-based) relative to the CG.
[[nodiscard]] Vec3 rotor_position(int index, const VehicleParams& params);

/// Immersion of the rotor centre in millimetres; positive below the surface.
[[nodiscard]] double rotor_immersion(const VehicleState& state, int index,
                                     const VehicleParams& params);

[[nodiscard]] std::array<double, 4> rotor_coefficients(const VehicleState& state,
                                                       const VehicleParams& params,
                                                       const ThrustModel& model);

/// Collects per-rotor thrusts and drag torques into the body wrench.
[[nodiscard]] ControlOutput mix(const std::array<double, 4>& thrusts,
                                const std::array<double, 4>& rotor_torques,
                                const VehicleParams& params);

/// Signed rotor speed sum used by the gyroscopic terms, in rad/s.
[[nodiscard]] double gyro_speed(const RotorCommand& command);

/// Wrench produced by `command` at the current immersion of each rotor.
[[nodiscard]] ControlOutput realize(const RotorCommand& command, const VehicleState& state,
                                    const VehicleParams& params, const ThrustModel& model);

/// Inverts the mixer, clamps each rotor to [0, C_T(h_i) omega_max^2 D^4] and
/// converts to rotor speeds with each rotor's own coefficient.
[[nodiscard]] Allocation allocate(double thrust, const Vec3& torque,
                                  const std::array<double, 4>& rotor_ct,
                                  const ThrustModel& model, const VehicleParams& params);

}  // namespace mhauv
