#pragma once

#include "mhauv/fluid.hpp"
#include "mhauv/reference.hpp"
#include "mhauv/types.hpp"

namespace mhauv {

/// Equivalent control cannot be formed because a divisor is nearly zero.
class NearSingularControl : public Error {
public:
    using Error::Error;
};

/// Twisting sliding-mode gains on the (z, roll, pitch, yaw) channels.
struct TwsmcGains {
    Vec4 surface{10.0, 10.0, 10.0, 10.0};  // diagonal of C in sigma = e' + C |e|^0.5 sgn(e)
    double r1 = 2500.0;
    double r2 = 1500.0;
    // Bounds on d(sigma'')/du and |sigma''(u = 0)| used only by the condition check.
    double k_m = 1.0;
    double k_M = 1.5;
    double c_bound = 500.0;
    double thrust_min = 0.0;
    double thrust_max = 8.0;
    // Yaw comes from rotor drag (0.01 N m per N), so 0.005 N m already
    // needs 0.5 N of differential thrust.
    Vec3 torque_limit{0.1, 0.1, 0.005};
    // |e| floor inside the e' / (2 sqrt|e|) feedforward term.
    double error_floor = 1e-3;

    void validate() const;
};

/// Channel errors e = q - q_ref and their rates, q = (z, roll, pitch, yaw).
struct TrackingError {
    Vec4 error = Vec4::Zero();
    Vec4 rate = Vec4::Zero();
};

[[nodiscard]] TrackingError tracking_error(const VehicleState& state, const Reference& reference);

/// sigma_i = e'_i + c_i sqrt|e_i| sgn(e_i).
[[nodiscard]] Vec4 sliding_surface(const Vec4& error, const Vec4& error_rate,
                                   const TwsmcGains& gains);

/// -r1 sgn(sigma) - r2 sgn(sigma'), with sgn(0) = 0.
[[nodiscard]] Vec4 twisting_term(const Vec4& sigma, const Vec4& sigma_rate,
                                 const TwsmcGains& gains);

struct TwistingReport {
    bool satisfied = false;
    double reach_margin = 0.0;  // (r1 + r2) K_m - C - ((r1 - r2) K_M + C)
    double twist_margin = 0.0;  // (r1 - r2) K_m - C
};

[[nodiscard]] TwistingReport check_twisting_conditions(const TwsmcGains& gains);

struct EquivalentControl {
    double thrust = 0.0;
    Vec3 torque = Vec3::Zero();
};

/// Thrust that makes the z channel's sigma' vanish under the model.
/// Throws NearSingularControl when |cos(roll) cos(pitch)| < 1e-3.
[[nodiscard]] double equivalent_thrust(const VehicleState& state, const Reference& reference,
                                       const FluidEffects& fluid, const VehicleParams& params,
                                       const TwsmcGains& gains);

/// Torques that make the attitude channels' sigma' vanish under the model,
/// given the rotor speed sum W_G currently driving the gyroscopic terms.
[[nodiscard]] Vec3 equivalent_torque(const VehicleState& state, const Reference& reference,
                                     const FluidEffects& fluid, const VehicleParams& params,
                                     const TwsmcGains& gains, double gyro_speed);

[[nodiscard]] EquivalentControl equivalent_control(const VehicleState& state,
                                                   const Reference& reference,
                                                   const FluidEffects& fluid,
                                                   const VehicleParams& params,
                                                   const TwsmcGains& gains, double gyro_speed);

struct TwsmcOutput {
    double thrust = 0.0;
    Vec3 torque = Vec3::Zero();
    Vec4 sigma = Vec4::Zero();
    Vec4 sigma_rate = Vec4::Zero();
    bool saturated = false;
    bool thrust_singular = false;  // equivalent thrust unavailable this step
};

/// Equivalent control plus the twisting term, clamped per channel. sigma' is
/// the backward difference (sigma - sigma_prev) / dt.
[[nodiscard]] TwsmcOutput twsmc_step(const VehicleState& state, const Reference& reference,
                                     const FluidEffects& fluid, const VehicleParams& params,
                                     const TwsmcGains& gains, const Vec4& sigma_prev, double dt,
                                     double gyro_speed, bool convergence = true);

}  // namespace mhauv
