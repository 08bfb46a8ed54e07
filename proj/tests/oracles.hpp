#pragma once

#include <cmath>

#include "mhauv/dynamics.hpp"
#include "mhauv/engine.hpp"
#include "mhauv/twsmc.hpp"
#include "support.hpp"

namespace test {

/// Smooth reference with every channel moving: z = a sin(w t), roll/pitch
/// oscillating, yaw ramping.
struct MovingReference {
    double a = 0.3, w = 1.3;
    double ra = 0.1, rw = 2.1;
    double yaw_rate = 0.2;

    [[nodiscard]] mhauv::Reference at(double t) const {
        mhauv::Reference r;
        r.position.z() = a * std::sin(w * t);
        r.z_rate = a * w * std::cos(w * t);
        r.z_accel = -a * w * w * std::sin(w * t);
        r.attitude = {ra * std::sin(rw * t), ra * std::cos(rw * t), yaw_rate * t};
        r.attitude_rate = {ra * rw * std::cos(rw * t), -ra * rw * std::sin(rw * t), yaw_rate};
        r.attitude_accel = {-ra * rw * rw * std::sin(rw * t), -ra * rw * rw * std::cos(rw * t), 0.0};
        return r;
    }
};

struct NullSample {
    mhauv::VehicleState state;
    double t = 0.0;
    double gyro_speed = 0.0;
};

/// In-envelope state whose every channel error has magnitude >= 0.02, so the
/// surface stays differentiable.
inline NullSample null_sample(Rng& rng, const MovingReference& ref) {
    NullSample s;
    s.t = rng.uniform(0.0, 10.0);
    const mhauv::Reference r = ref.at(s.t);
    auto offset = [&](double lo, double hi) {
        const double mag = rng.uniform(lo, hi);
        return rng.uniform(0, 1) < 0.5 ? -mag : mag;
    };
    s.state.position = {rng.uniform(-1, 1), rng.uniform(-1, 1), r.position.z() + offset(0.02, 0.3)};
    for (int i = 0; i < 3; ++i) s.state.attitude[i] = r.attitude[i] + offset(0.02, 0.12);
    s.state.body_velocity = rng.vec3(-0.5, 0.5);
    s.state.body_rates = rng.vec3(-0.8, 0.8);
    s.gyro_speed = rng.uniform(-300, 300);
    return s;
}

/// sigma' along the closed-loop flow under the equivalent control alone,
/// measured with a fourth-order central difference of sigma(x(t), t).
/// Returns max_i |sigma'_i| / max(1, |sigma|_inf). `model`, when given, is
/// the controller's idea of the plant parameters.
inline double null_residual(const NullSample& s, const MovingReference& ref,
                            const mhauv::VehicleParams& p, const mhauv::Environment& env,
                            const mhauv::TwsmcGains& gains,
                            const mhauv::VehicleParams* model = nullptr) {
    using namespace mhauv;
    const VehicleParams& m = model ? *model : p;
    const FluidEffects fx = fluid_effects(s.state, m, env);
    const EquivalentControl eq =
        equivalent_control(s.state, ref.at(s.t), fx, m, gains, s.gyro_speed);
    ControlOutput c;
    c.thrust = eq.thrust;
    c.torque = eq.torque;
    c.gyro_speed = s.gyro_speed;
    const StateDerivative f = derivative(s.state, c, p, env);

    auto sigma = [&](double h) {
        const VehicleState x = advance(s.state, f, h);
        const TrackingError te = tracking_error(x, ref.at(s.t + h));
        return sliding_surface(te.error, te.rate, gains);
    };
    const double h = 1e-4;
    const Vec4 rate = (-sigma(2 * h) + 8.0 * sigma(h) - 8.0 * sigma(-h) + sigma(-2 * h)) / (12.0 * h);
    const Vec4 s0 = sigma(0.0);
    return rate.cwiseAbs().maxCoeff() / std::max(1.0, s0.cwiseAbs().maxCoeff());
}

/// Observed convergence order of integrate_step() from three step sizes on a
/// submerged, tumbling, sinking vehicle with drag.
inline double rk4_order(double h = 1e-3, double horizon = 0.4) {
    using namespace mhauv;
    const VehicleParams p;
    const Environment env;
    VehicleState s0;
    s0.position = {0.1, -0.2, -1.0};
    s0.body_velocity = {-0.6, -0.3, -0.4};  // each component keeps its sign, away from the |v| v kink
    s0.attitude = {0.2, -0.1, 0.5};
    s0.body_rates = {1.5, -1.0, 2.0};
    ControlOutput c;
    c.thrust = 0.3;
    c.torque = {2e-3, -1e-3, 5e-4};
    c.gyro_speed = 150.0;
    auto solve = [&](double step) {
        VehicleState s = s0;
        const int n = static_cast<int>(std::lround(horizon / step));
        for (int k = 0; k < n; ++k) s = integrate_step(s, c, p, env, step);
        Eigen::Matrix<double, 12, 1> x;
        x << s.position, s.body_velocity, s.attitude, s.body_rates;
        return x;
    };
    const auto a = solve(h), b = solve(h / 2), c4 = solve(h / 4);
    return std::log2((a - b).norm() / (b - c4).norm());
}

}  // namespace test
