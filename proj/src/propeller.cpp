#include "mhauv/propeller.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mhauv {

void ThrustModel::validate() const {
    if (!(ct_air > 0.0 && ct_water > ct_air)) {
        throw InvalidArgument("thrust model requires ct_water > ct_air > 0");
    }
    if (!(h_water_mm > h_air_mm)) {
        throw InvalidArgument("thrust model requires h_water_mm > h_air_mm");
    }
    if (!(diameter > 0.0) || !(omega_max > 0.0) || !(torque_ratio >= 0.0)) {
        throw InvalidArgument("thrust model requires diameter > 0, omega_max > 0, torque_ratio >= 0");
    }
}

double thrust_coefficient(double h_mm, const ThrustModel& model) {
    if (!std::isfinite(h_mm)) {
        throw InvalidArgument("thrust_coefficient: non-finite immersion");
    }
    if (h_mm < model.h_air_mm) return model.ct_air;
    if (h_mm > model.h_water_mm) return model.ct_water;
    const double alpha = (model.h_water_mm - h_mm) / (model.h_water_mm - model.h_air_mm);
    const double lw = std::log(model.ct_water);
    // Each operation is monotone in h; the clamp keeps rounding from crossing the plateaus.
    return std::clamp(std::exp(lw + alpha * (std::log(model.ct_air) - lw)), model.ct_air,
                      model.ct_water);
}

double rotor_thrust(double omega_rpm, double h_mm, const ThrustModel& model) {
    if (!(omega_rpm >= 0.0)) {
        throw InvalidArgument("rotor_thrust: negative rotor speed");
    }
    const double d2 = model.diameter * model.diameter;
    return thrust_coefficient(h_mm, model) * omega_rpm * omega_rpm * d2 * d2;
}

Vec3 rotor_position(int index, const VehicleParams& params) {
    // Layout follows the mixer: tau_x = (T1 - T3) l, tau_y = (T4 - T2) l.
    const double l = params.arm_length;
    const double d = params.rotor_offset;
    switch (index) {
        case 0: return {0.0, l, d};
        case 1: return {l, 0.0, d};
        case 2: return {0.0, -l, d};
        case 3: return {-l, 0.0, d};
        default: throw InvalidArgument("rotor index out of range");
    }
}

double rotor_immersion(const VehicleState& state, int index, const VehicleParams& params) {
    const Mat3 r = euler_to_rotation(state.attitude);
    const double z = state.position.z() + r.row(2).dot(rotor_position(index, params));
    return -z * 1000.0;
}

std::array<double, 4> rotor_coefficients(const VehicleState& state, const VehicleParams& params,
                                         const ThrustModel& model) {
    std::array<double, 4> ct{};
    for (int i = 0; i < 4; ++i) {
        ct[i] = thrust_coefficient(rotor_immersion(state, i, params), model);
    }
    return ct;
}

ControlOutput mix(const std::array<double, 4>& t, const std::array<double, 4>& m,
                  const VehicleParams& params) {
    for (double ti : t) {
        if (!(ti >= 0.0)) {
            throw InvalidArgument("mix: rotor thrust must be non-negative");
        }
    }
    const double l = params.arm_length;
    ControlOutput out;
    out.thrust = t[0] + t[1] + t[2] + t[3];
    out.torque = {(t[0] - t[2]) * l, (-t[1] + t[3]) * l, -m[0] + m[1] - m[2] + m[3]};
    return out;
}

double gyro_speed(const RotorCommand& c) {
    constexpr double rpm_to_rad = 2.0 * std::numbers::pi / 60.0;
    return (c.omega[0] - c.omega[1] + c.omega[2] - c.omega[3]) * rpm_to_rad;
}

ControlOutput realize(const RotorCommand& command, const VehicleState& state,
                      const VehicleParams& params, const ThrustModel& model) {
    std::array<double, 4> thrusts{};
    std::array<double, 4> torques{};
    for (int i = 0; i < 4; ++i) {
        thrusts[i] = rotor_thrust(command.omega[i], rotor_immersion(state, i, params), model);
        torques[i] = model.torque_ratio * thrusts[i];
    }
    ControlOutput out = mix(thrusts, torques, params);
    out.rotor_command = command;
    out.gyro_speed = gyro_speed(command);
    return out;
}

Allocation allocate(double thrust, const Vec3& torque, const std::array<double, 4>& rotor_ct,
                    const ThrustModel& model, const VehicleParams& params) {
    if (!(thrust >= 0.0)) {
        throw InvalidArgument("allocate: collective thrust must be non-negative");
    }
    const double l = params.arm_length;
    const double k = model.torque_ratio;
    const double yaw_split = k > 0.0 ? torque.z() / k : 0.0;
    const double s13 = 0.5 * (thrust - yaw_split);
    const double s24 = 0.5 * (thrust + yaw_split);
    std::array<double, 4> t{0.5 * (s13 + torque.x() / l), 0.5 * (s24 - torque.y() / l),
                            0.5 * (s13 - torque.x() / l), 0.5 * (s24 + torque.y() / l)};

    Allocation result;
    const double d2 = model.diameter * model.diameter;
    const double d4 = d2 * d2;
    for (int i = 0; i < 4; ++i) {
        const double t_max = rotor_ct[i] * model.omega_max * model.omega_max * d4;
        const double clamped = std::clamp(t[i], 0.0, t_max);
        if (clamped != t[i]) {
            result.saturated = true;
        }
        result.thrusts[i] = clamped;
        result.command.omega[i] = std::min(std::sqrt(clamped / (rotor_ct[i] * d4)), model.omega_max);
    }
    std::array<double, 4> m{};
    for (int i = 0; i < 4; ++i) m[i] = k * result.thrusts[i];
    result.achieved = mix(result.thrusts, m, params);
    result.achieved.rotor_command = result.command;
    result.achieved.gyro_speed = gyro_speed(result.command);
    return result;
}

}  // namespace mhauv
