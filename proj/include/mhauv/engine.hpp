#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhauv/metrics.hpp"
#include "mhauv/scenario.hpp"

namespace mhauv {

/// One RK4 step of derivative() with the wrench and disturbance held.
[[nodiscard]] VehicleState integrate_step(const VehicleState& state, const ControlOutput& control,
                                          const VehicleParams& params, const Environment& env,
                                          double dt, const BodyWrench& disturbance = {});

/// Sum of the pulses active at time t.
[[nodiscard]] BodyWrench disturbance_at(const std::vector<Pulse>& pulses, double t);

struct Divergence {
    double time = 0.0;
    std::string reason;
};

struct SimResult {
    std::vector<SimRecord> records;
    std::vector<SwitchEvent> events;
    Metrics metrics;
    std::optional<Divergence> divergence;

    [[nodiscard]] bool diverged() const { return divergence.has_value(); }
};

/// Fixed-step closed-loop run: the controller is sampled every control
/// period and held while RK4 advances the plant at the physics step. Rotor
/// thrust is re-evaluated each physics step from the held rotor speeds and
/// the current immersion of every rotor.
[[nodiscard]] SimResult run(const Scenario& scenario);

struct ComparisonRow {
    std::string shape;
    ControlMode mode = ControlMode::Hybrid;
    SimResult result;
};

/// Reference shapes of the controller comparison; each run starts at rest on
/// its reference.
struct ComparisonSpec {
    StepReference step;
    SineReference sine;
    CosineReference cosine;
    double duration = 20.0;

    void validate() const;
};

/// (name, scenario) for step, sine and cosine, all other settings from `base`.
[[nodiscard]] std::vector<std::pair<std::string, Scenario>> comparison_shapes(
    const Scenario& base, const ComparisonSpec& spec);

inline const std::vector<ControlMode> kComparedModes{ControlMode::PurePid,
                                                     ControlMode::PureTwsmc, ControlMode::Hybrid};

/// Runs every shape once per mode with everything else identical. Runs execute on
/// up to `threads` worker threads; row order is fixed by (shape, mode).
[[nodiscard]] std::vector<ComparisonRow> compare(
    const std::vector<std::pair<std::string, Scenario>>& shapes,
    const std::vector<ControlMode>& modes, unsigned threads = 1);

}  // namespace mhauv
