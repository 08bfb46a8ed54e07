#include "mhauv/twsmc.hpp"

#include <algorithm>
#include <cmath>

namespace mhauv {

namespace {

double sgn(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

// Target second derivative of e that keeps sigma' = 0: e'' = -c e' / (2 sqrt|e|).
double surface_feedforward(double c, double e, double e_rate, double floor) {
    return -c * e_rate / (2.0 * std::sqrt(std::max(std::abs(e), floor)));
}

// Time derivative of the Euler rate matrix.
Mat3 euler_rate_matrix_dot(const Vec3& att, const Vec3& att_rate) {
    const double sf = std::sin(att.x()), cf = std::cos(att.x());
    const double st = std::sin(att.y()), ct = std::cos(att.y());
    const double tt = st / ct, sec2 = 1.0 / (ct * ct);
    const double a = att_rate.x(), b = att_rate.y();
    Mat3 d;
    d << 0.0, cf * tt * a + sf * sec2 * b,        -sf * tt * a + cf * sec2 * b,
         0.0, -sf * a,                            -cf * a,
         0.0, cf / ct * a + sf * st * sec2 * b,   -sf / ct * a + cf * st * sec2 * b;
    return d;
}

}  // namespace

void TwsmcGains::validate() const {
    if (!(r1 > r2 && r2 > 0.0)) {
        throw InvalidArgument("twisting gains require r1 > r2 > 0");
    }
    if (!(surface.array() > 0.0).all()) {
        throw InvalidArgument("sliding surface gains must be > 0");
    }
    if (!(thrust_max > thrust_min) || thrust_min < 0.0 || !(torque_limit.array() > 0.0).all()) {
        throw InvalidArgument("TWSMC output limits: need 0 <= thrust_min < thrust_max, torque limits > 0");
    }
    if (!(error_floor > 0.0)) {
        throw InvalidArgument("TWSMC error floor must be > 0");
    }
}

TrackingError tracking_error(const VehicleState& state, const Reference& ref) {
    const Mat3 r = euler_to_rotation(state.attitude);
    const Vec3 rates = euler_rate_matrix(state.attitude) * state.body_rates;
    const double z_rate = r.row(2).dot(state.body_velocity);
    TrackingError te;
    te.error << state.position.z() - ref.position.z(), state.attitude.x() - ref.attitude.x(),
        state.attitude.y() - ref.attitude.y(), wrap_angle(state.attitude.z() - ref.attitude.z());
    te.rate << z_rate - ref.z_rate, rates.x() - ref.attitude_rate.x(),
        rates.y() - ref.attitude_rate.y(), rates.z() - ref.attitude_rate.z();
    return te;
}

Vec4 sliding_surface(const Vec4& e, const Vec4& e_rate, const TwsmcGains& gains) {
    Vec4 s;
    for (int i = 0; i < 4; ++i) {
        s[i] = e_rate[i] + gains.surface[i] * std::sqrt(std::abs(e[i])) * sgn(e[i]);
    }
    return s;
}

Vec4 twisting_term(const Vec4& sigma, const Vec4& sigma_rate, const TwsmcGains& gains) {
    if (!(gains.r1 > gains.r2 && gains.r2 > 0.0)) {
        throw InvalidArgument("twisting gains require r1 > r2 > 0");
    }
    Vec4 u;
    for (int i = 0; i < 4; ++i) {
        u[i] = -gains.r1 * sgn(sigma[i]) - gains.r2 * sgn(sigma_rate[i]);
    }
    return u;
}

TwistingReport check_twisting_conditions(const TwsmcGains& g) {
    if (!(g.k_m > 0.0)) {
        throw InvalidArgument("K_m must be > 0");
    }
    if (!(g.r1 > g.r2 && g.r2 > 0.0)) {
        throw InvalidArgument("twisting gains require r1 > r2 > 0");
    }
    if (g.k_M < g.k_m || g.c_bound < 0.0) {
        throw InvalidArgument("need K_M >= K_m and C >= 0");
    }
    TwistingReport rep;
    rep.reach_margin = ((g.r1 + g.r2) * g.k_m - g.c_bound) - ((g.r1 - g.r2) * g.k_M + g.c_bound);
    rep.twist_margin = (g.r1 - g.r2) * g.k_m - g.c_bound;
    rep.satisfied = rep.reach_margin > 0.0 && rep.twist_margin > 0.0;
    return rep;
}

double equivalent_thrust(const VehicleState& state, const Reference& ref, const FluidEffects& fluid,
                         const VehicleParams& params, const TwsmcGains& gains) {
    const Mat3 r = euler_to_rotation(state.attitude);
    // Vertical projection of body +z. (The thrust divisor is cos(roll) cos(pitch).)
    const double a2 = r(2, 2);
    if (std::abs(a2) < 1e-3) {
        throw NearSingularControl("equivalent thrust: cos(roll) cos(pitch) below 1e-3");
    }
    const TrackingError te = tracking_error(state, ref);
    const double m = fluid.total_mass(params);
    // World z'' = -g_eff + (A2 T + r3 . F_d) / m, since R (v' + w x v) = sum of body forces / m.
    const double z_accel = ref.z_accel + surface_feedforward(gains.surface[0], te.error[0],
                                                             te.rate[0], gains.error_floor);
    const double drag_z = r.row(2).dot(fluid.drag_force);
    return (m * (z_accel + fluid.effective_gravity) - drag_z) / a2;
}

Vec3 equivalent_torque(const VehicleState& state, const Reference& ref, const FluidEffects& fluid,
                       const VehicleParams& params, const TwsmcGains& gains, double gyro_speed) {
    const TrackingError te = tracking_error(state, ref);
    const Vec3& att = state.attitude;
    const Vec3& w = state.body_rates;
    const Vec3 att_rate = euler_rate_matrix(att) * w;

    Vec3 att_accel;
    for (int i = 0; i < 3; ++i) {
        att_accel[i] = ref.attitude_accel[i] + surface_feedforward(gains.surface[i + 1],
                                                                   te.error[i + 1], te.rate[i + 1],
                                                                   gains.error_floor);
    }
    // eta'' = E w' + E' w  =>  w' = E^-1 (eta'' - E' w).
    const double sf = std::sin(att.x()), cf = std::cos(att.x());
    const double st = std::sin(att.y()), ct = std::cos(att.y());
    Mat3 e_inv;
    e_inv << 1.0, 0.0, -st,
             0.0, cf,  sf * ct,
             0.0, -sf, cf * ct;
    const Vec3 w_dot = e_inv * (att_accel - euler_rate_matrix_dot(att, att_rate) * w);

    const Vec3 j = fluid.total_inertia(params);
    const double ir = params.rotor_inertia * gyro_speed;
    return {j.x() * w_dot.x() - (j.y() - j.z()) * w.y() * w.z() + ir * w.y() - fluid.drag_moment.x(),
            j.y() * w_dot.y() - (j.z() - j.x()) * w.z() * w.x() - ir * w.x() - fluid.drag_moment.y(),
            j.z() * w_dot.z() - (j.x() - j.y()) * w.x() * w.y() - fluid.drag_moment.z()};
}

EquivalentControl equivalent_control(const VehicleState& state, const Reference& ref,
                                     const FluidEffects& fluid, const VehicleParams& params,
                                     const TwsmcGains& gains, double gyro_speed) {
    return {equivalent_thrust(state, ref, fluid, params, gains),
            equivalent_torque(state, ref, fluid, params, gains, gyro_speed)};
}

TwsmcOutput twsmc_step(const VehicleState& state, const Reference& ref, const FluidEffects& fluid,
                       const VehicleParams& params, const TwsmcGains& gains,
                       const Vec4& sigma_prev, double dt, double gyro_speed, bool convergence) {
    if (!(dt > 0.0)) {
        throw InvalidArgument("twsmc_step: dt must be > 0");
    }
    const TrackingError te = tracking_error(state, ref);
    TwsmcOutput out;
    out.sigma = sliding_surface(te.error, te.rate, gains);
    out.sigma_rate = (out.sigma - sigma_prev) / dt;

    double thrust_eq = 0.0;
    try {
        thrust_eq = equivalent_thrust(state, ref, fluid, params, gains);
    } catch (const NearSingularControl&) {
        out.thrust_singular = true;
    }
    const Vec3 torque_eq = equivalent_torque(state, ref, fluid, params, gains, gyro_speed);
    const Vec4 conv = convergence ? twisting_term(out.sigma, out.sigma_rate, gains) : Vec4::Zero();

    const double raw_thrust = thrust_eq + conv[0];
    out.thrust = std::clamp(raw_thrust, gains.thrust_min, gains.thrust_max);
    out.saturated = out.thrust != raw_thrust;
    for (int i = 0; i < 3; ++i) {
        const double raw = torque_eq[i] + conv[i + 1];
        out.torque[i] = std::clamp(raw, -gains.torque_limit[i], gains.torque_limit[i]);
        out.saturated = out.saturated || out.torque[i] != raw;
    }
    return out;
}

}  // namespace mhauv
