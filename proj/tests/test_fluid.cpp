#include "doctest.h"
#include "mhauv/fluid.hpp"
#include "support.hpp"

using namespace mhauv;

TEST_CASE("zone weight values") {
    VehicleParams p;
    CHECK(zone_weight(0.05, p) == 0.0);
    CHECK(zone_weight(0.0, p) == 0.5);
    CHECK(test::close(zone_weight(-0.025, p), 0.75, 1e-15));
    CHECK(zone_weight(-0.05, p) == 1.0);
    CHECK(zone_weight(3.0, p) == 0.0);
    CHECK(zone_weight(-3.0, p) == 1.0);
    CHECK_THROWS_AS((void)zone_weight(std::nan(""), p), InvalidArgument);
}

TEST_CASE("zone weight is continuous and monotone") {
    VehicleParams p;
    const double h = p.height;
    for (double eps : {1e-6, 1e-8, 1e-10}) {
        for (double b : {h / 2, -h / 2}) {
            CHECK(std::abs(zone_weight(b + eps, p) - zone_weight(b, p)) <= eps / h * (1 + 1e-6));
            CHECK(std::abs(zone_weight(b - eps, p) - zone_weight(b, p)) <= eps / h * (1 + 1e-6));
        }
    }
    test::Rng rng(5);
    for (int i = 0; i < 5000; ++i) {
        double a = rng.uniform(-0.2, 0.2), b = rng.uniform(-0.2, 0.2);
        if (a > b) std::swap(a, b);
        const double wa = zone_weight(a, p), wb = zone_weight(b, p);
        CHECK(wa >= wb);
        CHECK(wa >= 0.0);
        CHECK(wa <= 1.0);
    }
}

TEST_CASE("air has no fluid effects") {
    VehicleParams p;
    Environment env;
    VehicleState s;
    s.position.z() = 0.3;
    s.body_velocity = {1, -2, 3};
    s.body_rates = {0.5, 0.5, 0.5};
    const FluidEffects fx = fluid_effects(s, p, env);
    CHECK(fx.weight_coefficient == 0.0);
    CHECK(fx.added_mass == 0.0);
    CHECK(fx.buoyancy_force == 0.0);
    CHECK(fx.drag_force.isZero(0.0));
    CHECK(fx.drag_moment.isZero(0.0));
    CHECK(fx.effective_gravity == 9.81);
}

TEST_CASE("submerged at rest") {
    VehicleParams p;
    Environment env;
    VehicleState s;
    s.position.z() = -0.5;
    const FluidEffects fx = fluid_effects(s, p, env);
    CHECK(test::close(fx.buoyancy_force, 1000 * 9.81 * 1.5e-4, 1e-12));
    CHECK(test::close(fx.buoyancy_force, 1.4715, 1e-12));
    CHECK(test::close(fx.effective_gravity, 4.905, 1e-12));
    CHECK(fx.drag_force.isZero(0.0));
    CHECK(test::close(fx.total_mass(p), 0.35, 1e-15));
}

TEST_CASE("surge drag in water") {
    VehicleParams p;
    Environment env;
    VehicleState s;
    s.position.z() = -0.5;
    s.body_velocity = {1.0, 0.0, 0.0};
    const FluidEffects fx = fluid_effects(s, p, env);
    CHECK(test::close(fx.drag_force.x(), -10.0, 1e-12));
    CHECK(fx.drag_force.y() == 0.0);
    CHECK(fx.drag_force.z() == 0.0);
}

TEST_CASE("buoyancy is proportional to the zone weight") {
    VehicleParams p;
    Environment env;
    test::Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        const VehicleState s = test::random_state(rng, -0.2, 0.2);
        const FluidEffects fx = fluid_effects(s, p, env);
        CHECK(fx.buoyancy_force == fx.weight_coefficient * env.rho_water * env.g0 * p.displaced_volume);
        CHECK(fx.weight_coefficient == zone_weight(s.position.z(), p));
    }
}

TEST_CASE("drag opposes every channel and never injects energy") {
    VehicleParams p;
    Environment env;
    test::Rng rng(13);
    for (int i = 0; i < 2000; ++i) {
        const VehicleState s = test::random_state(rng, -0.3, 0.04);
        const FluidEffects fx = fluid_effects(s, p, env);
        double power = 0.0;
        for (int k = 0; k < 3; ++k) {
            if (s.body_velocity[k] != 0.0) {
                CHECK(fx.drag_force[k] * s.body_velocity[k] < 0.0);
            }
            if (s.body_rates[k] != 0.0) {
                CHECK(fx.drag_moment[k] * s.body_rates[k] < 0.0);
            }
            power += fx.drag_force[k] * s.body_velocity[k] + fx.drag_moment[k] * s.body_rates[k];
        }
        CHECK(power <= 0.0);
    }
}

TEST_CASE("fluid effects are continuous at the lower boundary") {
    VehicleParams p;
    Environment env;
    VehicleState s;
    s.body_velocity = {0.3, -0.2, 0.5};
    s.body_rates = {0.4, 0.1, -0.6};
    s.position.z() = -0.05;
    const FluidEffects water = fluid_effects(s, p, env);
    s.position.z() = -0.05 + 1e-12;
    const FluidEffects band = fluid_effects(s, p, env);
    CHECK(test::rel_close(band.added_mass, water.added_mass, 1e-9));
    CHECK(test::rel_close(band.buoyancy_force, water.buoyancy_force, 1e-9));
    CHECK(test::rel_close(band.effective_gravity, water.effective_gravity, 1e-9));
    for (int k = 0; k < 3; ++k) {
        CHECK(test::rel_close(band.drag_force[k], water.drag_force[k], 1e-9));
        CHECK(test::rel_close(band.drag_moment[k], water.drag_moment[k], 1e-9));
    }
}

TEST_CASE("weight potential differentiates to the effective weight") {
    VehicleParams p;
    p.added_mass = 0.05;
    Environment env;
    CHECK(weight_potential(0.0, p, env) == 0.0);
    CHECK(test::close(weight_potential(1.0, p, env), 0.3 * 9.81 * (1.0 - 0.05) +
                                                         weight_potential(0.05, p, env), 1e-12));
    for (double z : {-0.4, -0.049, -0.02, 0.0, 0.013, 0.049, 0.2}) {
        const double h = 1e-6;
        const double slope = (weight_potential(z + h, p, env) - weight_potential(z - h, p, env)) / (2 * h);
        CHECK(test::close(slope, effective_weight(z, p, env), 1e-6));
    }
}
