#include "mhauv/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace mhauv {

namespace {

StateDerivative combine(const StateDerivative& k1, const StateDerivative& k2,
                        const StateDerivative& k3, const StateDerivative& k4) {
    StateDerivative d;
    d.position = (k1.position + 2.0 * k2.position + 2.0 * k3.position + k4.position) / 6.0;
    d.body_velocity = (k1.body_velocity + 2.0 * k2.body_velocity + 2.0 * k3.body_velocity +
                       k4.body_velocity) /
                      6.0;
    d.attitude = (k1.attitude + 2.0 * k2.attitude + 2.0 * k3.attitude + k4.attitude) / 6.0;
    d.body_rates =
        (k1.body_rates + 2.0 * k2.body_rates + 2.0 * k3.body_rates + k4.body_rates) / 6.0;
    return d;
}

Strategy pid_strategy(double z) { return z >= 0.0 ? Strategy::Air : Strategy::Water; }

}  // namespace

VehicleState integrate_step(const VehicleState& state, const ControlOutput& control,
                            const VehicleParams& params, const Environment& env, double dt,
                            const BodyWrench& disturbance) {
    const StateDerivative k1 = derivative(state, control, params, env, disturbance);
    const StateDerivative k2 =
        derivative(advance(state, k1, 0.5 * dt), control, params, env, disturbance);
    const StateDerivative k3 =
        derivative(advance(state, k2, 0.5 * dt), control, params, env, disturbance);
    const StateDerivative k4 = derivative(advance(state, k3, dt), control, params, env, disturbance);
    VehicleState next = advance(state, combine(k1, k2, k3, k4), dt);
    if (!next.finite()) throw NonFiniteState("state became non-finite during integration");
    return next;
}

BodyWrench disturbance_at(const std::vector<Pulse>& pulses, double t) {
    BodyWrench w;
    for (const Pulse& p : pulses) {
        if (t >= p.start && t < p.start + p.duration) {
            w.force += p.force;
            w.torque += p.torque;
        }
    }
    return w;
}

SimResult run(const Scenario& sc) {
    sc.validate();
    SimResult result;
    const std::vector<Pulse> pulses = sc.expanded_pulses();
    const SwitchConfig config = sc.switch_config();
    const VehicleParams& params = sc.vehicle;
    const Environment& env = sc.environment;
    const double tc = sc.control_period;
    const int substeps = sc.substeps();
    const long steps = std::lround(sc.duration / tc);

    VehicleState s = sc.initial;
    ControllerStates cs;
    Strategy strategy = Strategy::Air;
    switch (sc.mode) {
        case ControlMode::Hybrid: strategy = initial_strategy(s.position.z(), config); break;
        case ControlMode::PureTwsmc: strategy = Strategy::Hybrid; break;
        case ControlMode::PurePid:
        case ControlMode::Off: strategy = pid_strategy(s.position.z()); break;
    }
    Supervisor supervisor(strategy, config);
    if (strategy == Strategy::Hybrid && sc.mode != ControlMode::Off) {
        const TrackingError te =
            tracking_error(s, hybrid_reference(sample_reference(sc.reference, 0.0)));
        cs.sigma_prev = sliding_surface(te.error, te.rate, sc.gains.twsmc);
    }

    // Pure PID keeps one set of integrators and swaps gains at the surface.
    ControllerGains pid_water_gains = sc.gains;
    pid_water_gains.air = sc.gains.water;

    RotorCommand command;
    result.records.reserve(static_cast<std::size_t>(steps));
    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * tc;
        try {
            const Reference ref = sample_reference(sc.reference, t);
            const FluidEffects fluid = fluid_effects(s, params, env);
            SimRecord rec;
            rec.t = t;
            rec.state = s;
            rec.z_ref = ref.position.z();
            rec.zone = classify_zone(s.position.z(), params);

            if (sc.mode == ControlMode::Off) {
                command = RotorCommand{};
                rec.strategy = pid_strategy(s.position.z());
                rec.attitude_ref = ref.attitude;
            } else {
                ControllerCommand cmd;
                const double wg = gyro_speed(command);
                if (sc.mode == ControlMode::Hybrid) {
                    if (auto ev = supervisor.update(s, t)) {
                        cs = handover(ev->from, ev->to, std::move(cs), s, ref, fluid, sc.gains,
                                      params, tc);
                        result.events.push_back(*ev);
                    }
                    strategy = supervisor.current();
                    cmd = controller_step(strategy, cs, s, ref, fluid, sc.gains, params, tc, wg);
                } else if (sc.mode == ControlMode::PureTwsmc) {
                    strategy = Strategy::Hybrid;
                    cmd = controller_step(strategy, cs, s, ref, fluid, sc.gains, params, tc, wg);
                } else {
                    strategy = pid_strategy(s.position.z());
                    const ControllerGains& g =
                        strategy == Strategy::Air ? sc.gains : pid_water_gains;
                    cmd = controller_step(Strategy::Air, cs, s, ref, fluid, g, params, tc, wg);
                }
                const Allocation alloc =
                    allocate(cmd.thrust, cmd.torque, rotor_coefficients(s, params, sc.thrust),
                             sc.thrust, params);
                command = alloc.command;
                rec.strategy = strategy;
                rec.thrust = cmd.thrust;
                rec.torque = cmd.torque;
                rec.attitude_ref = cmd.attitude_ref;
                if (cmd.twsmc_active) rec.sigma = cmd.sigma;
                if (cmd.saturated) rec.saturation |= kControllerSaturated;
                if (alloc.saturated) rec.saturation |= kAllocatorSaturated;
            }
            rec.rotors = command;
            result.records.push_back(rec);

            const double h = sc.physics_step;
            for (int i = 0; i < substeps; ++i) {
                const double ti = t + i * h;
                const ControlOutput out = realize(command, s, params, sc.thrust);
                s = integrate_step(s, out, params, env, h, disturbance_at(pulses, ti));
            }
        } catch (const NonFiniteState& e) {
            result.divergence = Divergence{t, e.what()};
            break;
        } catch (const SingularAttitude& e) {
            result.divergence = Divergence{t, e.what()};
            break;
        }
    }

    result.metrics = compute_metrics(result.records, result.events,
                                     hold_segments(sc.reference, sc.duration), tc,
                                     params.height);
    return result;
}

void ComparisonSpec::validate() const {
    if (!(duration > 0.0)) throw InvalidArgument("comparison duration must be > 0");
    mhauv::validate(ReferenceSpec{step});
    mhauv::validate(ReferenceSpec{sine});
    mhauv::validate(ReferenceSpec{cosine});
}

std::vector<std::pair<std::string, Scenario>> comparison_shapes(const Scenario& base,
                                                                const ComparisonSpec& spec) {
    spec.validate();
    std::vector<std::pair<std::string, Scenario>> out;
    auto add = [&](std::string name, ReferenceSpec ref) {
        Scenario s = base;
        s.reference = std::move(ref);
        s.duration = spec.duration;
        s.initial = VehicleState{};
        s.initial.position.z() = sample_reference(s.reference, 0.0).position.z();
        out.emplace_back(std::move(name), std::move(s));
    };
    add("step", spec.step);
    add("sine", spec.sine);
    add("cosine", spec.cosine);
    return out;
}

std::vector<ComparisonRow> compare(const std::vector<std::pair<std::string, Scenario>>& shapes,
                                   const std::vector<ControlMode>& modes, unsigned threads) {
    std::vector<ComparisonRow> rows;
    for (const auto& [name, base] : shapes) {
        base.validate();
        for (ControlMode m : modes) {
            ComparisonRow row;
            row.shape = name;
            row.mode = m;
            rows.push_back(std::move(row));
        }
    }
    const std::size_t n_modes = modes.size();
    auto job = [&](std::size_t i) {
        Scenario sc = shapes[i / n_modes].second;
        sc.mode = rows[i].mode;
        rows[i].result = run(sc);
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) job(i);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(rows.size());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < rows.size(); i = next++) {
                try {
                    job(i);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return rows;
}

}  // namespace mhauv
