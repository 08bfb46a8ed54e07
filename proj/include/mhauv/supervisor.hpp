#pragma once

#include <optional>
#include <string_view>

#include "mhauv/types.hpp"

namespace mhauv {

/// Active control law: cascade PID in air (S_A) and water (S_W), twisting
/// sliding mode across the interface (S_H).
enum class Strategy { Air, Hybrid, Water };

[[nodiscard]] std::string_view to_string(Strategy s);

struct SwitchConfig {
    double upper_boundary = 0.05;  // H_M = H/2
    double lower_boundary = -0.05; // H_m = -H/2
    double delta_z = 0.02;         // hysteresis half-width [m]
    double max_angle = 0.26;       // a_M, bound on |roll|, |pitch| [rad]
    double max_rate = 1.0;         // a_vM, bound on |roll'|, |pitch'| [rad/s]
    double dwell_time = 0.05;      // minimum time between switches [s]

    void validate() const;
    [[nodiscard]] static SwitchConfig for_height(double height);
};

struct SwitchEvent {
    double time = 0.0;
    Strategy from = Strategy::Air;
    Strategy to = Strategy::Air;
    double z = 0.0;
    double z_rate = 0.0;
    double roll = 0.0;
    double pitch = 0.0;
    double roll_rate = 0.0;
    double pitch_rate = 0.0;
};

/// The attitude/rate guard: |roll|, |pitch| <= a_M and |roll'|, |pitch'| <= a_vM.
[[nodiscard]] bool attitude_guard(const VehicleState& state, const SwitchConfig& config);

/// One evaluation of the switching rule. Returns the event when `current`
/// should hand over to an adjacent strategy, nothing otherwise.
[[nodiscard]] std::optional<SwitchEvent> evaluate_switch(Strategy current,
                                                         const VehicleState& state,
                                                         const SwitchConfig& config,
                                                         double time = 0.0);

/// Strategy matching the zone the vehicle starts in.
[[nodiscard]] Strategy initial_strategy(double z, const SwitchConfig& config);

/// evaluate_switch() plus dwell-time enforcement.
class Supervisor {
public:
    Supervisor(Strategy initial, SwitchConfig config) : current_(initial), config_(config) {}

    std::optional<SwitchEvent> update(const VehicleState& state, double time);

    [[nodiscard]] Strategy current() const { return current_; }
    [[nodiscard]] const SwitchConfig& config() const { return config_; }

private:
    Strategy current_;
    SwitchConfig config_;
    std::optional<double> last_switch_;
};

}  // namespace mhauv
