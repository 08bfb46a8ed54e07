#pragma once

#include <cstdint>
#include <vector>

#include "mhauv/controller.hpp"
#include "mhauv/dynamics.hpp"
#include "mhauv/propeller.hpp"
#include "mhauv/reference.hpp"
#include "mhauv/supervisor.hpp"

namespace mhauv {

/// Additive body-frame wrench applied on [start, start + duration).
struct Pulse {
    double start = 0.0;
    double duration = 0.0;
    Vec3 force = Vec3::Zero();
    Vec3 torque = Vec3::Zero();
};

/// Pulses with uniformly drawn start times and torques, generated from the
/// scenario seed.
struct RandomPulses {
    int count = 0;
    double t_min = 0.0;
    double t_max = 0.0;
    double duration = 0.1;
    double torque_max = 0.0;
};

struct DisturbanceSpec {
    std::vector<Pulse> pulses;
    RandomPulses random;
};

struct Scenario {
    VehicleParams vehicle;
    Environment environment;
    ThrustModel thrust;
    ControllerGains gains;
    SwitchConfig switching;  // boundaries are always taken from the vehicle height
    ReferenceSpec reference = StepReference{};
    VehicleState initial;
    double duration = 10.0;
    double physics_step = 1e-3;
    double control_period = 2e-3;
    DisturbanceSpec disturbance;
    ControlMode mode = ControlMode::Hybrid;
    std::uint64_t seed = 1;

    void validate() const;

    /// Switching configuration with H_M = H/2 and H_m = -H/2.
    [[nodiscard]] SwitchConfig switch_config() const;

    /// Explicit plus seeded random pulses, in a deterministic order.
    [[nodiscard]] std::vector<Pulse> expanded_pulses() const;

    /// Number of physics steps per control period.
    [[nodiscard]] int substeps() const;
};

/// Defaults for the vehicle used throughout: 0.3 kg quadrotor, 0.1 m tall.
[[nodiscard]] Scenario default_scenario();

/// Times at which z_ref of a profile passes through or leaves the water surface.
[[nodiscard]] std::vector<double> surface_crossings(const ProfileReference& profile);

/// The three-level water-crossing profile starting on the surface. With
/// `pulse_torque` != 0 a roll-torque pulse of that size and `pulse_duration`
/// starts at every surface crossing of the reference.
[[nodiscard]] Scenario crossing_experiment(double pulse_torque = 0.0, double pulse_duration = 0.2);

}  // namespace mhauv
