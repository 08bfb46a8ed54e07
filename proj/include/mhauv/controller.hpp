#pragma once

#include <string_view>

#include "mhauv/pid.hpp"
#include "mhauv/supervisor.hpp"
#include "mhauv/twsmc.hpp"

namespace mhauv {

enum class ControlMode { PurePid, PureTwsmc, Hybrid, Off };

[[nodiscard]] std::string_view to_string(ControlMode mode);
[[nodiscard]] ControlMode parse_control_mode(std::string_view name);

struct ControllerGains {
    CascadeGains air;
    CascadeGains water;
    TwsmcGains twsmc;

    void validate() const {
        air.validate();
        water.validate();
        twsmc.validate();
    }
};

/// Mutable controller memory owned by one simulation run.
struct ControllerStates {
    PidBank air;
    PidBank water;
    Vec4 sigma_prev = Vec4::Zero();
    double last_thrust = 0.0;
    Vec3 last_torque = Vec3::Zero();
};

struct ControllerCommand {
    double thrust = 0.0;
    Vec3 torque = Vec3::Zero();
    Vec3 attitude_ref = Vec3::Zero();
    Vec4 sigma = Vec4::Zero();
    bool twsmc_active = false;
    bool saturated = false;
};

/// Reference seen by S_H: the vertical trajectory with level attitude and the
/// commanded heading.
[[nodiscard]] Reference hybrid_reference(const Reference& reference);

/// Bumpless transfer. Entering S_A or S_W presets that PID bank so its first
/// output equals the last applied command; entering S_H re-seeds sigma_prev
/// from the current state. The PID bank being left is not modified.
[[nodiscard]] ControllerStates handover(Strategy from, Strategy to, ControllerStates states,
                                        const VehicleState& state, const Reference& reference,
                                        const FluidEffects& fluid, const ControllerGains& gains,
                                        const VehicleParams& params, double dt);

/// Runs the control law for `strategy` and records its output in `states`.
ControllerCommand controller_step(Strategy strategy, ControllerStates& states,
                                  const VehicleState& state, const Reference& reference,
                                  const FluidEffects& fluid, const ControllerGains& gains,
                                  const VehicleParams& params, double dt, double gyro_speed);

}  // namespace mhauv
