#include "mhauv/fluid.hpp"

#include <algorithm>
#include <cmath>

namespace mhauv {

double zone_weight(double z, const VehicleParams& params) {
    if (!std::isfinite(z)) {
        throw InvalidArgument("zone_weight: non-finite z");
    }
    const double half = 0.5 * params.height;
    if (z >= half) return 0.0;
    if (z <= -half) return 1.0;
    return 0.5 - z / params.height;
}

FluidEffects fluid_effects(const VehicleState& state, const VehicleParams& params,
                           const Environment& env) {
    FluidEffects fx;
    const double c = zone_weight(state.position.z(), params);
    fx.weight_coefficient = c;
    fx.added_mass = c * params.added_mass;
    fx.buoyancy_force = c * env.rho_water * env.g0 * params.displaced_volume;
    fx.effective_gravity = env.g0 - fx.buoyancy_force / params.mass;
    fx.added_inertia = c * params.added_inertia;
    if (c == 0.0) {
        return fx;
    }
    // 0.5 * C_d * (C * A_d0) * rho_w * nu * |nu|, with nu = (u, v, w, P, Q, R).
    const double q = 0.5 * params.drag_coefficient * c * env.rho_water;
    for (int i = 0; i < 3; ++i) {
        const double u = state.body_velocity[i];
        const double w = state.body_rates[i];
        fx.drag_force[i] = -q * params.drag_areas[i] * u * std::abs(u);
        fx.drag_moment[i] = -q * params.drag_areas[i + 3] * w * std::abs(w);
    }
    return fx;
}

double effective_weight(double z, const VehicleParams& params, const Environment& env) {
    VehicleState s;
    s.position.z() = z;
    const FluidEffects fx = fluid_effects(s, params, env);
    return fx.total_mass(params) * fx.effective_gravity;
}

namespace {

// Antiderivative of m(C) g(C) with respect to C, where m = m_v + C m_a0 and
// g = g0 - C b, b = rho g0 V0 / m_v.
double weight_antiderivative(double c, const VehicleParams& p, const Environment& env) {
    const double b = env.rho_water * env.g0 * p.displaced_volume / p.mass;
    return p.mass * env.g0 * c + 0.5 * (p.added_mass * env.g0 - p.mass * b) * c * c -
           p.added_mass * b * c * c * c / 3.0;
}

// Integral of the effective weight over [a, b] where both ends lie in one zone.
double integrate_within_zone(double a, double b, const VehicleParams& p, const Environment& env) {
    const double half = 0.5 * p.height;
    const double mid = 0.5 * (a + b);
    if (mid >= half || mid <= -half) {
        return effective_weight(mid, p, env) * (b - a);
    }
    // ds = -H dC inside the band.
    const double ca = 0.5 - a / p.height;
    const double cb = 0.5 - b / p.height;
    return -p.height * (weight_antiderivative(cb, p, env) - weight_antiderivative(ca, p, env));
}

}  // namespace

double weight_potential(double z, const VehicleParams& params, const Environment& env) {
    const double half = 0.5 * params.height;
    const double lo = std::min(0.0, z);
    const double hi = std::max(0.0, z);
    double total = 0.0;
    double cursor = lo;
    for (double edge : {-half, half, hi}) {
        const double next = std::clamp(edge, lo, hi);
        if (next > cursor) {
            total += integrate_within_zone(cursor, next, params, env);
            cursor = next;
        }
    }
    return z >= 0.0 ? total : -total;
}

}  // namespace mhauv
