#pragma once

#include "mhauv/types.hpp"

namespace mhauv {

/// Immersion-weighted hydrodynamic effects at one instant.
///
/// A single weight C scales added mass, buoyancy and drag area alike. Drag
/// entries are forces, not magnitudes: each one opposes its velocity channel,
/// so the dynamics add them.
struct FluidEffects {
    double weight_coefficient = 0.0;  // C in [0, 1]
    double added_mass = 0.0;          // m_a [kg]
    double buoyancy_force = 0.0;      // B [N]
    double effective_gravity = 0.0;   // g0 - B / m_v [m/s^2]
    Vec3 added_inertia = Vec3::Zero();
    Vec3 drag_force = Vec3::Zero();   // body frame [N]
    Vec3 drag_moment = Vec3::Zero();  // body frame [N m]

    [[nodiscard]] double total_mass(const VehicleParams& params) const {
        return params.mass + added_mass;
    }
    [[nodiscard]] Vec3 total_inertia(const VehicleParams& params) const {
        return params.inertia + added_inertia;
    }
};

/// 0 above z = H/2, 1 below z = -H/2, linear (0.5 - z/H) across the band.
[[nodiscard]] double zone_weight(double z, const VehicleParams& params);

[[nodiscard]] FluidEffects fluid_effects(const VehicleState& state, const VehicleParams& params,
                                         const Environment& env);

/// Effective weight m(z) * g(z) that the translational dynamics apply along -z.
[[nodiscard]] double effective_weight(double z, const VehicleParams& params,
                                      const Environment& env);

/// Potential of effective_weight, integrated from the surface (Phi(0) = 0).
[[nodiscard]] double weight_potential(double z, const VehicleParams& params,
                                      const Environment& env);

}  // namespace mhauv
