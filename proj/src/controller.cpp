#include "mhauv/controller.hpp"

#include <string>

namespace mhauv {

std::string_view to_string(ControlMode mode) {
    switch (mode) {
        case ControlMode::PurePid: return "pure-pid";
        case ControlMode::PureTwsmc: return "pure-twsmc";
        case ControlMode::Hybrid: return "hybrid";
        case ControlMode::Off: return "off";
    }
    return "?";
}

ControlMode parse_control_mode(std::string_view name) {
    for (ControlMode m : {ControlMode::PurePid, ControlMode::PureTwsmc, ControlMode::Hybrid,
                          ControlMode::Off}) {
        if (to_string(m) == name) return m;
    }
    throw InvalidArgument("unknown control mode '" + std::string(name) + "'");
}

Reference hybrid_reference(const Reference& reference) {
    Reference r = reference;
    r.attitude.x() = 0.0;
    r.attitude.y() = 0.0;
    r.attitude_rate.x() = r.attitude_rate.y() = 0.0;
    r.attitude_accel.x() = r.attitude_accel.y() = 0.0;
    return r;
}

ControllerStates handover(Strategy from, Strategy to, ControllerStates states,
                          const VehicleState& state, const Reference& reference,
                          const FluidEffects& fluid, const ControllerGains& gains,
                          const VehicleParams& params, double dt) {
    if (from == to) {
        throw InvalidArgument("handover: source and target strategies are identical");
    }
    switch (to) {
        case Strategy::Air:
            preset_cascade(states.air, states.last_thrust, states.last_torque, state, reference, fluid,
                           gains.air, params, dt);
            break;
        case Strategy::Water:
            preset_cascade(states.water, states.last_thrust, states.last_torque, state, reference,
                           fluid, gains.water, params, dt);
            break;
        case Strategy::Hybrid: {
            const TrackingError te = tracking_error(state, hybrid_reference(reference));
            states.sigma_prev = sliding_surface(te.error, te.rate, gains.twsmc);
            break;
        }
    }
    return states;
}

ControllerCommand controller_step(Strategy strategy, ControllerStates& states,
                                  const VehicleState& state, const Reference& reference,
                                  const FluidEffects& fluid, const ControllerGains& gains,
                                  const VehicleParams& params, double dt, double gyro_speed) {
    ControllerCommand cmd;
    if (strategy == Strategy::Hybrid) {
        const Reference ref = hybrid_reference(reference);
        const TwsmcOutput out =
            twsmc_step(state, ref, fluid, params, gains.twsmc, states.sigma_prev, dt, gyro_speed);
        states.sigma_prev = out.sigma;
        cmd.thrust = out.thrust;
        cmd.torque = out.torque;
        cmd.attitude_ref = ref.attitude;
        cmd.sigma = out.sigma;
        cmd.twsmc_active = true;
        cmd.saturated = out.saturated;
    } else {
        PidBank& bank = strategy == Strategy::Air ? states.air : states.water;
        const CascadeGains& g = strategy == Strategy::Air ? gains.air : gains.water;
        const CascadeOutput out = cascade_pid_step(state, reference, fluid, bank, g, params, dt);
        cmd.thrust = out.thrust;
        cmd.torque = out.torque;
        cmd.attitude_ref = out.attitude_ref;
        cmd.saturated = out.saturated;
    }
    states.last_thrust = cmd.thrust;
    states.last_torque = cmd.torque;
    return cmd;
}

}  // namespace mhauv
