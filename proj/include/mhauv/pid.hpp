#pragma once

#include "mhauv/fluid.hpp"
#include "mhauv/reference.hpp"
#include "mhauv/types.hpp"

namespace mhauv {

/// Discrete per-sample PID gains, flight-controller style:
///   u = kp * e + ki * sum(e_k) + kd * (e_k - e_{k-1})
/// where the difference is formed from the measured error rate times the
/// control period. Gains therefore depend on the control rate.
struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
    double output_limit = 1.0;  // also bounds the integral contribution

    void validate() const;
};

class Pid {
public:
    /// Accumulates e into the integrator (clamped to output_limit / ki) and
    /// returns the unclamped P + I + D sum.
    double step(double error, double error_rate, double dt, const PidGains& gains);

    /// P + D part for the given inputs, without touching the integrator.
    [[nodiscard]] static double proportional_derivative(double error, double error_rate, double dt,
                                                        const PidGains& gains);

    /// Chooses the integrator so that the next step() with the same inputs
    /// returns `target` (as far as the anti-windup clamp allows).
    void preset(double target, double error, double error_rate, double dt, const PidGains& gains);

    [[nodiscard]] double integral() const { return integral_; }
    void reset() { integral_ = 0.0; }

private:
    double integral_ = 0.0;  // sum of errors
};

struct CascadeGains {
    PidGains x{1.0, 0.0, 1000.0, 2.0};      // -> desired world acceleration [m/s^2]
    PidGains y{1.0, 0.0, 1000.0, 2.0};
    PidGains z{60.0, 0.5, 3000.0, 8.0};     // -> thrust correction [N]
    PidGains roll{6.0, 0.05, 30.0, 0.1};    // -> torque [N m]
    PidGains pitch{6.0, 0.05, 30.0, 0.1};
    PidGains yaw{6.0, 0.05, 30.0, 0.05};
    double max_tilt = 0.05;                  // bound on commanded roll/pitch [rad]
    double thrust_min = 0.0;
    double thrust_max = 8.0;

    void validate() const;
};

struct PidBank {
    Pid x, y, z, roll, pitch, yaw;
};

struct CascadeOutput {
    double thrust = 0.0;
    Vec3 torque = Vec3::Zero();
    Vec3 attitude_ref = Vec3::Zero();
    Vec3 attitude_rate = Vec3::Zero();  // measured Euler rates used by the D terms
    double thrust_feedforward = 0.0;
    bool saturated = false;
};

/// Outer x/y/z position loop with gravity/buoyancy feedforward, inner
/// roll/pitch/yaw attitude loop. Both loops run every call.
[[nodiscard]] CascadeOutput cascade_pid_step(const VehicleState& state, const Reference& reference,
                                             const FluidEffects& fluid, PidBank& pids,
                                             const CascadeGains& gains, const VehicleParams& params,
                                             double dt);

/// Sets the bank's z and attitude integrators so that the next
/// cascade_pid_step() reproduces `thrust` and `torque` on those channels.
void preset_cascade(PidBank& pids, double thrust, const Vec3& torque, const VehicleState& state,
                    const Reference& reference, const FluidEffects& fluid,
                    const CascadeGains& gains, const VehicleParams& params, double dt);

}  // namespace mhauv
