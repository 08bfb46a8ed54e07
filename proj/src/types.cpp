#include "mhauv/types.hpp"

#include <cmath>
#include <numbers>

namespace mhauv {

namespace {

void require(bool ok, const char* what) {
    if (!ok) {
        throw InvalidArgument(what);
    }
}

}  // namespace

bool VehicleState::finite() const {
    return position.allFinite() && body_velocity.allFinite() && attitude.allFinite() &&
           body_rates.allFinite();
}

void VehicleParams::validate() const {
    require(std::isfinite(mass) && mass > 0.0, "vehicle mass must be > 0");
    require(std::isfinite(added_mass) && added_mass >= 0.0, "added mass must be >= 0");
    require(inertia.allFinite() && (inertia.array() > 0.0).all(), "inertias must be > 0");
    require(added_inertia.allFinite() && (added_inertia.array() >= 0.0).all(),
            "added inertias must be >= 0");
    require(std::isfinite(rotor_inertia) && rotor_inertia > 0.0, "rotor inertia must be > 0");
    require(std::isfinite(arm_length) && arm_length > 0.0, "arm length must be > 0");
    require(std::isfinite(height) && height > 0.0, "vehicle height must be > 0");
    require(std::isfinite(displaced_volume) && displaced_volume >= 0.0,
            "displaced volume must be >= 0");
    for (double a : drag_areas) {
        require(std::isfinite(a) && a >= 0.0, "drag areas must be >= 0");
    }
    require(std::isfinite(drag_coefficient) && drag_coefficient >= 0.0,
            "drag coefficient must be >= 0");
    require(std::isfinite(rotor_offset), "rotor offset must be finite");
}

void Environment::validate() const {
    require(std::isfinite(rho_water) && std::isfinite(rho_air) && rho_air > 0.0 &&
                rho_water > rho_air,
            "densities must satisfy rho_water > rho_air > 0");
    require(std::isfinite(g0) && g0 > 0.0, "g0 must be > 0");
}

std::string_view to_string(Zone zone) {
    switch (zone) {
        case Zone::Air: return "air";
        case Zone::Hybrid: return "hybrid";
        case Zone::Water: return "water";
    }
    return "?";
}

Zone classify_zone(double z, const VehicleParams& params) {
    if (!std::isfinite(z)) {
        throw InvalidArgument("classify_zone: non-finite z");
    }
    const double half = 0.5 * params.height;
    if (z >= half) return Zone::Air;
    if (z <= -half) return Zone::Water;
    return Zone::Hybrid;
}

void require_regular_attitude(const Vec3& attitude) {
    if (!attitude.allFinite()) {
        throw NonFiniteState("attitude is not finite");
    }
    if (std::abs(attitude.y()) >= std::numbers::pi / 2.0 - kGimbalGuard) {
        throw SingularAttitude("pitch within the gimbal-lock guard: " +
                               std::to_string(attitude.y()));
    }
}

Mat3 euler_to_rotation(const Vec3& attitude) {
    require_regular_attitude(attitude);
    const double sf = std::sin(attitude.x()), cf = std::cos(attitude.x());
    const double st = std::sin(attitude.y()), ct = std::cos(attitude.y());
    const double sp = std::sin(attitude.z()), cp = std::cos(attitude.z());
    Mat3 r;
    r << ct * cp, sf * st * cp - cf * sp, cf * st * cp + sf * sp,
         ct * sp, sf * st * sp + cf * cp, cf * st * sp - sf * cp,
         -st,     sf * ct,                cf * ct;
    return r;
}

Mat3 euler_rate_matrix(const Vec3& attitude) {
    require_regular_attitude(attitude);
    const double sf = std::sin(attitude.x()), cf = std::cos(attitude.x());
    const double ct = std::cos(attitude.y()), tt = std::tan(attitude.y());
    Mat3 e;
    e << 1.0, sf * tt,  cf * tt,
         0.0, cf,       -sf,
         0.0, sf / ct,  cf / ct;
    return e;
}

double wrap_angle(double angle) {
    const double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::remainder(angle, two_pi);
    if (wrapped <= -std::numbers::pi) wrapped += two_pi;
    return wrapped;
}

}  // namespace mhauv
