#pragma once

#include "mhauv/fluid.hpp"
#include "mhauv/propeller.hpp"
#include "mhauv/types.hpp"

namespace mhauv {

struct StateDerivative {
    Vec3 position = Vec3::Zero();       // world velocity
    Vec3 body_velocity = Vec3::Zero();  // body acceleration
    Vec3 attitude = Vec3::Zero();       // Euler angle rates
    Vec3 body_rates = Vec3::Zero();     // body angular acceleration
};

/// External body-frame force and torque added on top of the rotor wrench.
struct BodyWrench {
    Vec3 force = Vec3::Zero();
    Vec3 torque = Vec3::Zero();
};

[[nodiscard]] VehicleState advance(const VehicleState& s, const StateDerivative& d, double h);

/// Full state derivative in any zone.
///
/// Translational: v' = -w x v + g_eff * R^T(-e_z) + (T_z e_z + F_d + F_ext) / m,
/// m = m_v + m_a. Rotational: principal-axis Euler equations on J = I + I_a
/// with the rotor gyroscopic pair (-I_zzm Q W_G, +I_zzm P W_G) and the drag
/// moment. In air every fluid term vanishes and m = m_v, g_eff = g0.
[[nodiscard]] StateDerivative derivative(const VehicleState& state, const ControlOutput& control,
                                         const VehicleParams& params, const Environment& env,
                                         const BodyWrench& disturbance = {});

/// Same as derivative() with precomputed fluid effects for `state`.
[[nodiscard]] StateDerivative derivative(const VehicleState& state, const ControlOutput& control,
                                         const FluidEffects& fluid, const VehicleParams& params,
                                         const BodyWrench& disturbance = {});

/// Kinetic energy with zone-dependent mass and inertia plus the potential of
/// the effective weight. Diagnostic only.
[[nodiscard]] double total_energy(const VehicleState& state, const VehicleParams& params,
                                  const Environment& env);

}  // namespace mhauv
