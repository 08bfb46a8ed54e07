#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mhauv/engine.hpp"

namespace mhauv::io {

inline constexpr const char* kLogHeader =
    "t,x,y,z,u,v,w,phi,theta,psi,p,q,r,z_ref,phi_ref,theta_ref,psi_ref,zone,strategy,"
    "t_z,tau_x,tau_y,tau_z,omega1,omega2,omega3,omega4,sigma_z,sigma_phi,sigma_theta,"
    "sigma_psi,sat_flags";

inline constexpr const char* kEventHeader =
    "time,from,to,z,z_rate,roll,pitch,roll_rate,pitch_rate";

inline constexpr const char* kComparisonHeader =
    "shape,mode,diverged,rms_z_error,max_z_error,steady_state_z_error,attitude_envelope,"
    "chattering_air,chattering_hybrid,chattering_water,hold_chattering_air,"
    "hold_chattering_hybrid,hold_chattering_water,crossing_time_down,crossing_time_up,"
    "switch_count";

inline constexpr const char* kCtHeader = "h_mm,c_t";

/// 9 significant digits; "nan" for NaN.
[[nodiscard]] std::string number(double v);

void write_log(std::ostream& os, const std::vector<SimRecord>& records);
void write_events(std::ostream& os, const std::vector<SwitchEvent>& events);

/// Flat key/value JSON document.
[[nodiscard]] std::string metrics_json(const SimResult& result);

void write_comparison(std::ostream& os, const std::vector<ComparisonRow>& rows);

/// (h, C_T) over an even grid of n points on [h_min, h_max].
void write_ct_curve(std::ostream& os, double h_min, double h_max, int n,
                    const ThrustModel& model = {});

}  // namespace mhauv::io
