#include "mhauv/supervisor.hpp"

#include <cmath>

namespace mhauv {

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::Air: return "S_A";
        case Strategy::Hybrid: return "S_H";
        case Strategy::Water: return "S_W";
    }
    return "?";
}

void SwitchConfig::validate() const {
    if (!(delta_z >= 0.0)) throw InvalidArgument("switching: delta_z must be >= 0");
    if (!(upper_boundary > lower_boundary)) {
        throw InvalidArgument("switching: upper boundary must exceed lower boundary");
    }
    if (!(max_angle > 0.0) || !(max_rate > 0.0) || !(dwell_time >= 0.0)) {
        throw InvalidArgument("switching: guard limits must be > 0 and dwell time >= 0");
    }
}

SwitchConfig SwitchConfig::for_height(double height) {
    SwitchConfig c;
    c.upper_boundary = 0.5 * height;
    c.lower_boundary = -0.5 * height;
    return c;
}

bool attitude_guard(const VehicleState& state, const SwitchConfig& config) {
    const Vec3 rates = euler_rate_matrix(state.attitude) * state.body_rates;
    return std::abs(state.attitude.x()) <= config.max_angle &&
           std::abs(state.attitude.y()) <= config.max_angle &&
           std::abs(rates.x()) <= config.max_rate && std::abs(rates.y()) <= config.max_rate;
}

std::optional<SwitchEvent> evaluate_switch(Strategy current, const VehicleState& state,
                                           const SwitchConfig& config, double time) {
    const double z = state.position.z();
    const double z_rate = euler_to_rotation(state.attitude).row(2).dot(state.body_velocity);
    const double hi = config.upper_boundary;
    const double lo = config.lower_boundary;
    const double dz = config.delta_z;

    std::optional<Strategy> target;
    switch (current) {
        case Strategy::Air:
            if (z < hi - dz && z_rate < 0.0) target = Strategy::Hybrid;
            break;
        case Strategy::Hybrid:
            if (z >= hi + dz && z_rate >= 0.0) {
                target = Strategy::Air;
            } else if (z <= lo - dz && z_rate <= 0.0) {
                target = Strategy::Water;
            }
            break;
        case Strategy::Water:
            if (z > lo + dz && z_rate > 0.0) target = Strategy::Hybrid;
            break;
    }
    if (!target || !attitude_guard(state, config)) {
        return std::nullopt;
    }
    const Vec3 rates = euler_rate_matrix(state.attitude) * state.body_rates;
    return SwitchEvent{time, current, *target, z, z_rate,
                       state.attitude.x(), state.attitude.y(), rates.x(), rates.y()};
}

Strategy initial_strategy(double z, const SwitchConfig& config) {
    if (z >= config.upper_boundary) return Strategy::Air;
    if (z <= config.lower_boundary) return Strategy::Water;
    return Strategy::Hybrid;
}

std::optional<SwitchEvent> Supervisor::update(const VehicleState& state, double time) {
    if (last_switch_ && time - *last_switch_ < config_.dwell_time) {
        return std::nullopt;
    }
    auto event = evaluate_switch(current_, state, config_, time);
    if (event) {
        current_ = event->to;
        last_switch_ = time;
    }
    return event;
}

}  // namespace mhauv
