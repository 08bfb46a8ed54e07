#pragma once

#include <optional>
#include <vector>

#include "mhauv/propeller.hpp"
#include "mhauv/reference.hpp"
#include "mhauv/supervisor.hpp"
#include "mhauv/types.hpp"

namespace mhauv {

enum SaturationFlag : unsigned {
    kControllerSaturated = 1u << 0,  // control law clamped one of its channels
    kAllocatorSaturated = 1u << 1,   // a rotor hit 0 or its maximum thrust
    kThrustSingular = 1u << 2,       // equivalent thrust unavailable, twisting term only
};

/// One control period of the closed loop.
struct SimRecord {
    double t = 0.0;
    VehicleState state;
    double z_ref = 0.0;
    Vec3 attitude_ref = Vec3::Zero();
    Zone zone = Zone::Air;
    Strategy strategy = Strategy::Air;
    double thrust = 0.0;  // commanded T_z
    Vec3 torque = Vec3::Zero();
    RotorCommand rotors;
    std::optional<Vec4> sigma;  // present while the sliding-mode law is active
    unsigned saturation = 0;
};

struct HoldError {
    TimeWindow window;  // steady-state window: final 2 s of the hold
    double mean_abs_error = 0.0;
};

struct ChatterSegment {
    Zone zone = Zone::Air;
    double start = 0.0;
    double end = 0.0;
    double total_variation = 0.0;
    double index = 0.0;  // total variation of T_z per second
};

struct Crossing {
    bool downward = true;
    double reference_time = 0.0;
    std::optional<double> duration;  // empty when the vehicle never completed it
};

struct ZoneChatter {
    double air = 0.0;
    double hybrid = 0.0;
    double water = 0.0;
};

struct Metrics {
    double rms_z_error = 0.0;
    double max_z_error = 0.0;
    std::vector<HoldError> holds;
    double steady_state_z_error = 0.0;  // worst hold
    double attitude_envelope = 0.0;     // max |roll|, |pitch| [rad]
    std::vector<ChatterSegment> chatter;
    ZoneChatter chattering;        // per zone over the whole run
    ZoneChatter hold_chattering;   // per zone, restricted to hold segments
    std::vector<Crossing> crossings;
    int switch_count = 0;

    [[nodiscard]] std::optional<double> crossing_time(bool downward) const;
};

inline constexpr double kSteadyStateWindow = 2.0;

/// Recomputes every metric from the records alone.
[[nodiscard]] Metrics compute_metrics(const std::vector<SimRecord>& records,
                                      const std::vector<SwitchEvent>& events,
                                      const std::vector<TimeWindow>& holds, double control_period,
                                      double height);

}  // namespace mhauv
