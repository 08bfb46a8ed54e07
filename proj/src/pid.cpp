#include "mhauv/pid.hpp"

#include <algorithm>
#include <cmath>

namespace mhauv {

void PidGains::validate() const {
    if (!(kp >= 0.0 && ki >= 0.0 && kd >= 0.0)) {
        throw InvalidArgument("PID gains must be >= 0");
    }
    if (!(output_limit > 0.0)) {
        throw InvalidArgument("PID output limit must be > 0");
    }
}

double Pid::step(double error, double error_rate, double dt, const PidGains& gains) {
    integral_ += error;
    if (gains.ki > 0.0) {
        const double bound = gains.output_limit / gains.ki;
        integral_ = std::clamp(integral_, -bound, bound);
    } else {
        integral_ = 0.0;
    }
    return gains.kp * error + gains.ki * integral_ + gains.kd * error_rate * dt;
}

double Pid::proportional_derivative(double error, double error_rate, double dt,
                                    const PidGains& gains) {
    return gains.kp * error + gains.kd * error_rate * dt;
}

void Pid::preset(double target, double error, double error_rate, double dt,
                 const PidGains& gains) {
    if (gains.ki <= 0.0) {
        return;
    }
    const double bound = gains.output_limit / gains.ki;
    const double after = std::clamp(
        (target - proportional_derivative(error, error_rate, dt, gains)) / gains.ki, -bound, bound);
    integral_ = after - error;
}

void CascadeGains::validate() const {
    for (const PidGains* g : {&x, &y, &z, &roll, &pitch, &yaw}) {
        g->validate();
    }
    if (!(max_tilt > 0.0) || !(thrust_max > thrust_min) || thrust_min < 0.0) {
        throw InvalidArgument("cascade gains: need max_tilt > 0 and 0 <= thrust_min < thrust_max");
    }
}

namespace {

struct LoopInputs {
    Vec3 attitude_ref;
    Vec3 att_error;
    Vec3 att_error_rate;
    Vec3 euler_rates;
    double z_error = 0.0;
    double z_error_rate = 0.0;
    double feedforward = 0.0;
};

// Runs the outer horizontal loop (mutating the x/y integrators) and forms the
// errors seen by the z and attitude loops.
LoopInputs outer_loop(const VehicleState& state, const Reference& ref, const FluidEffects& fluid,
                      Pid& px, Pid& py, const CascadeGains& gains, const VehicleParams& params,
                      double dt) {
    const Mat3 r = euler_to_rotation(state.attitude);
    const Vec3 world_vel = r * state.body_velocity;
    const double psi = state.attitude.z();

    const double ax = std::clamp(
        px.step(ref.position.x() - state.position.x(), -world_vel.x(), dt, gains.x),
        -gains.x.output_limit, gains.x.output_limit);
    const double ay = std::clamp(
        py.step(ref.position.y() - state.position.y(), -world_vel.y(), dt, gains.y),
        -gains.y.output_limit, gains.y.output_limit);

    // Small-angle inversion of the horizontal thrust projection, in the heading frame.
    const double g = std::max(fluid.effective_gravity, 1e-3);
    const double forward = std::cos(psi) * ax + std::sin(psi) * ay;
    const double left = -std::sin(psi) * ax + std::cos(psi) * ay;

    LoopInputs in;
    in.attitude_ref = {std::clamp(-left / g, -gains.max_tilt, gains.max_tilt),
                       std::clamp(forward / g, -gains.max_tilt, gains.max_tilt),
                       ref.attitude.z()};
    in.euler_rates = euler_rate_matrix(state.attitude) * state.body_rates;
    in.att_error = {in.attitude_ref.x() - state.attitude.x(),
                    in.attitude_ref.y() - state.attitude.y(),
                    wrap_angle(in.attitude_ref.z() - state.attitude.z())};
    in.att_error_rate = {-in.euler_rates.x(), -in.euler_rates.y(),
                         ref.attitude_rate.z() - in.euler_rates.z()};

    in.z_error = ref.position.z() - state.position.z();
    in.z_error_rate = ref.z_rate - world_vel.z();
    const double tilt = std::max(r(2, 2), 0.1);
    in.feedforward = fluid.total_mass(params) * (fluid.effective_gravity + ref.z_accel) / tilt;
    return in;
}

}  // namespace

CascadeOutput cascade_pid_step(const VehicleState& state, const Reference& reference,
                               const FluidEffects& fluid, PidBank& pids, const CascadeGains& gains,
                               const VehicleParams& params, double dt) {
    if (!(dt > 0.0)) {
        throw InvalidArgument("cascade_pid_step: dt must be > 0");
    }
    const LoopInputs in = outer_loop(state, reference, fluid, pids.x, pids.y, gains, params, dt);

    CascadeOutput out;
    out.attitude_ref = in.attitude_ref;
    out.attitude_rate = in.euler_rates;
    out.thrust_feedforward = in.feedforward;

    const double raw_thrust =
        in.feedforward + pids.z.step(in.z_error, in.z_error_rate, dt, gains.z);
    out.thrust = std::clamp(raw_thrust, gains.thrust_min, gains.thrust_max);
    out.saturated = out.thrust != raw_thrust;

    Pid* loops[3] = {&pids.roll, &pids.pitch, &pids.yaw};
    const PidGains* loop_gains[3] = {&gains.roll, &gains.pitch, &gains.yaw};
    for (int i = 0; i < 3; ++i) {
        const double raw = loops[i]->step(in.att_error[i], in.att_error_rate[i], dt, *loop_gains[i]);
        const double lim = loop_gains[i]->output_limit;
        out.torque[i] = std::clamp(raw, -lim, lim);
        out.saturated = out.saturated || out.torque[i] != raw;
    }
    return out;
}

void preset_cascade(PidBank& pids, double thrust, const Vec3& torque, const VehicleState& state,
                    const Reference& reference, const FluidEffects& fluid,
                    const CascadeGains& gains, const VehicleParams& params, double dt) {
    // Work on copies of the horizontal loops: the real step will advance them.
    Pid px = pids.x;
    Pid py = pids.y;
    const LoopInputs in = outer_loop(state, reference, fluid, px, py, gains, params, dt);
    pids.z.preset(thrust - in.feedforward, in.z_error, in.z_error_rate, dt, gains.z);
    pids.roll.preset(torque.x(), in.att_error.x(), in.att_error_rate.x(), dt, gains.roll);
    pids.pitch.preset(torque.y(), in.att_error.y(), in.att_error_rate.y(), dt, gains.pitch);
    pids.yaw.preset(torque.z(), in.att_error.z(), in.att_error_rate.z(), dt, gains.yaw);
}

}  // namespace mhauv
