#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace mhauv {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Pitch is too close to +-pi/2 for the Euler kinematics to be evaluated.
class SingularAttitude : public Error {
public:
    using Error::Error;
};

class NonFiniteState : public Error {
public:
    using Error::Error;
};

/// Distance from pitch = +-pi/2 below which attitude-dependent operations refuse to run.
inline constexpr double kGimbalGuard = 1e-3;

/// Rigid-body state. World frame is z-up with the water surface at z = 0.
struct VehicleState {
    Vec3 position = Vec3::Zero();       // x, y, z [m], world
    Vec3 body_velocity = Vec3::Zero();  // u, v, w [m/s], body
    Vec3 attitude = Vec3::Zero();       // roll, pitch, yaw [rad], Z-Y-X
    Vec3 body_rates = Vec3::Zero();     // P, Q, R [rad/s], body

    [[nodiscard]] bool finite() const;
};

struct VehicleParams {
    double mass = 0.3;                  // m_v [kg]
    double added_mass = 0.05;           // m_a0, fully submerged [kg]
    Vec3 inertia{0.005, 0.005, 0.008};  // Ixx, Iyy, Izz [kg m^2]
    Vec3 added_inertia = Vec3::Zero();  // fully submerged added rotational inertia
    double rotor_inertia = 1e-6;        // I_zzm [kg m^2]
    double arm_length = 0.1;            // l [m]
    double height = 0.1;                // H [m]
    double displaced_volume = 1.5e-4;   // V_0, fully submerged [m^3]
    // u, v, w, P, Q, R channels; rotational entries are the translational area times l^2.
    std::array<double, 6> drag_areas{0.02, 0.02, 0.02, 2e-4, 2e-4, 2e-4};
    double drag_coefficient = 1.0;      // C_d
    double rotor_offset = 0.02;         // rotor plane height above the CG [m]

    /// Throws InvalidArgument naming the first violated constraint.
    void validate() const;
};

struct Environment {
    double rho_water = 1000.0;
    double rho_air = 1.225;
    double g0 = 9.81;

    void validate() const;
};

enum class Zone { Air, Hybrid, Water };

[[nodiscard]] std::string_view to_string(Zone zone);

/// Air iff z >= H/2, Water iff z <= -H/2, Hybrid in between.
[[nodiscard]] Zone classify_zone(double z, const VehicleParams& params);

/// Body-to-world direction cosine matrix for Z-Y-X Euler angles.
[[nodiscard]] Mat3 euler_to_rotation(const Vec3& attitude);

/// Maps body rates (P, Q, R) to Euler angle rates.
[[nodiscard]] Mat3 euler_rate_matrix(const Vec3& attitude);

/// Throws SingularAttitude when |pitch| >= pi/2 - kGimbalGuard.
void require_regular_attitude(const Vec3& attitude);

/// Wraps an angle to (-pi, pi].
[[nodiscard]] double wrap_angle(double angle);

}  // namespace mhauv
