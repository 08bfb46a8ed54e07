#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "mhauv/types.hpp"

namespace mhauv {

/// Desired trajectory sample seen by the controllers.
struct Reference {
    Vec3 position = Vec3::Zero();  // x, y, z [m]
    double z_rate = 0.0;
    double z_accel = 0.0;
    Vec3 attitude = Vec3::Zero();
    Vec3 attitude_rate = Vec3::Zero();
    Vec3 attitude_accel = Vec3::Zero();
};

struct StepReference {
    double z_from = 0.5;
    double z_to = -0.5;
    double t_step = 5.0;
};

struct SineReference {
    double amplitude = 0.5;
    double period = 10.0;
    double offset = 0.0;
};

struct CosineReference {
    double amplitude = 0.5;
    double period = 10.0;
    double offset = 0.0;
};

/// Piecewise-linear z(t) through (t, z) knots, held at the ends.
struct ProfileReference {
    std::vector<std::pair<double, double>> knots;
};

using ReferenceSpec = std::variant<StepReference, SineReference, CosineReference, ProfileReference>;

struct TimeWindow {
    double start = 0.0;
    double end = 0.0;
};

void validate(const ReferenceSpec& spec);

/// Vertical reference at time t; horizontal position and attitude stay at zero.
[[nodiscard]] Reference sample_reference(const ReferenceSpec& spec, double t);

/// Intervals of [0, duration] over which z_ref is constant.
[[nodiscard]] std::vector<TimeWindow> hold_segments(const ReferenceSpec& spec, double duration);

/// Water-crossing profile 0 -> +level -> -level -> +level with constant-speed
/// ramps and `hold` seconds at each level, after a `lead_in` hold at 0.
[[nodiscard]] ProfileReference crossing_profile(double level = 0.5, double hold = 5.0,
                                                double ramp_speed = 0.25, double lead_in = 1.0);

}  // namespace mhauv
