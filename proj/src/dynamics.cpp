#include "mhauv/dynamics.hpp"

namespace mhauv {

VehicleState advance(const VehicleState& s, const StateDerivative& d, double h) {
    VehicleState out;
    out.position = s.position + h * d.position;
    out.body_velocity = s.body_velocity + h * d.body_velocity;
    out.attitude = s.attitude + h * d.attitude;
    out.body_rates = s.body_rates + h * d.body_rates;
    return out;
}

StateDerivative derivative(const VehicleState& state, const ControlOutput& control,
                           const VehicleParams& params, const Environment& env,
                           const BodyWrench& disturbance) {
    return derivative(state, control, fluid_effects(state, params, env), params, disturbance);
}

StateDerivative derivative(const VehicleState& state, const ControlOutput& control,
                           const FluidEffects& fluid, const VehicleParams& params,
                           const BodyWrench& disturbance) {
    if (!state.finite()) {
        throw NonFiniteState("derivative: state is not finite");
    }
    const Mat3 r = euler_to_rotation(state.attitude);
    const Mat3 e = euler_rate_matrix(state.attitude);

    const Vec3& v = state.body_velocity;
    const Vec3& w = state.body_rates;
    const double m = fluid.total_mass(params);

    StateDerivative d;
    d.position = r * v;
    d.attitude = e * w;

    // Gravity in body axes is -g R^T e_z, i.e. g (s_theta, -s_phi c_theta, -c_phi c_theta).
    // The transport term is -w x v: the body-frame derivative of an inertial velocity.
    const Vec3 gravity = -fluid.effective_gravity * r.row(2).transpose();
    Vec3 force = fluid.drag_force + disturbance.force;
    force.z() += control.thrust;
    d.body_velocity = -w.cross(v) + gravity + force / m;

    // Principal-axis Euler equations. The coupling coefficients are the
    // (Iyy - Izz)/Ixx, (Izz - Ixx)/Iyy, (Ixx - Iyy)/Izz set, each applied once.
    const Vec3 j = fluid.total_inertia(params);
    const double ir = params.rotor_inertia * control.gyro_speed;
    const Vec3 torque = control.torque + fluid.drag_moment + disturbance.torque;
    d.body_rates.x() = ((j.y() - j.z()) * w.y() * w.z() - ir * w.y() + torque.x()) / j.x();
    d.body_rates.y() = ((j.z() - j.x()) * w.z() * w.x() + ir * w.x() + torque.y()) / j.y();
    d.body_rates.z() = ((j.x() - j.y()) * w.x() * w.y() + torque.z()) / j.z();

    if (!(d.position.allFinite() && d.body_velocity.allFinite() && d.attitude.allFinite() &&
          d.body_rates.allFinite())) {
        throw NonFiniteState("derivative: non-finite result");
    }
    return d;
}

double total_energy(const VehicleState& state, const VehicleParams& params,
                    const Environment& env) {
    const FluidEffects fx = fluid_effects(state, params, env);
    const Vec3 j = fx.total_inertia(params);
    const double kinetic = 0.5 * fx.total_mass(params) * state.body_velocity.squaredNorm() +
                           0.5 * (j.array() * state.body_rates.array().square()).sum();
    return kinetic + weight_potential(state.position.z(), params, env);
}

}  // namespace mhauv
