#include "mhauv/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mhauv {

void Scenario::validate() const {
    vehicle.validate();
    environment.validate();
    thrust.validate();
    gains.validate();
    switch_config().validate();
    mhauv::validate(reference);
    if (!initial.finite()) {
        throw InvalidArgument("initial state must be finite");
    }
    require_regular_attitude(initial.attitude);
    if (!(duration > 0.0)) throw InvalidArgument("duration must be > 0");
    if (!(physics_step > 0.0)) throw InvalidArgument("physics step must be > 0");
    if (!(control_period >= physics_step)) {
        throw InvalidArgument("physics step must not exceed the control period");
    }
    const double ratio = control_period / physics_step;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
        throw InvalidArgument("control period must be an integer multiple of the physics step");
    }
    for (const Pulse& p : disturbance.pulses) {
        if (!(p.duration >= 0.0) || !p.force.allFinite() || !p.torque.allFinite()) {
            throw InvalidArgument("disturbance pulse: duration >= 0 and finite vectors required");
        }
    }
    const RandomPulses& r = disturbance.random;
    if (r.count < 0 || (r.count > 0 && !(r.t_max >= r.t_min && r.duration >= 0.0 &&
                                         r.torque_max >= 0.0))) {
        throw InvalidArgument("random disturbance: need count >= 0, t_max >= t_min, duration >= 0");
    }
}

SwitchConfig Scenario::switch_config() const {
    SwitchConfig c = switching;
    c.upper_boundary = 0.5 * vehicle.height;
    c.lower_boundary = -0.5 * vehicle.height;
    return c;
}

std::vector<Pulse> Scenario::expanded_pulses() const {
    std::vector<Pulse> out = disturbance.pulses;
    const RandomPulses& r = disturbance.random;
    if (r.count > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> when(r.t_min, r.t_max);
        std::uniform_real_distribution<double> mag(-r.torque_max, r.torque_max);
        for (int i = 0; i < r.count; ++i) {
            Pulse p;
            p.start = when(rng);
            p.duration = r.duration;
            p.torque = {mag(rng), mag(rng), mag(rng)};
            out.push_back(p);
        }
    }
    return out;
}

int Scenario::substeps() const {
    return static_cast<int>(std::lround(control_period / physics_step));
}

Scenario default_scenario() {
    Scenario s;
    s.initial.position.z() = std::get<StepReference>(s.reference).z_from;
    return s;
}

std::vector<double> surface_crossings(const ProfileReference& profile) {
    std::vector<double> out;
    const auto& k = profile.knots;
    for (std::size_t i = 1; i < k.size(); ++i) {
        const auto [t0, z0] = k[i - 1];
        const auto [t1, z1] = k[i];
        if ((z0 >= 0.0 && z1 < 0.0) || (z0 <= 0.0 && z1 > 0.0)) {
            out.push_back(t0 + (t1 - t0) * z0 / (z0 - z1));
        }
    }
    return out;
}

Scenario crossing_experiment(double pulse_torque, double pulse_duration) {
    Scenario s;
    const ProfileReference profile = crossing_profile();
    s.duration = profile.knots.back().first;
    s.reference = profile;
    s.mode = ControlMode::Hybrid;
    if (pulse_torque != 0.0) {
        for (double t : surface_crossings(profile)) {
            Pulse p;
            p.start = t;
            p.duration = pulse_duration;
            p.torque = {pulse_torque, 0.0, 0.0};
            s.disturbance.pulses.push_back(p);
        }
    }
    return s;
}

}  // namespace mhauv
