#include "doctest.h"
#include "mhauv/pid.hpp"
#include "support.hpp"

using namespace mhauv;

namespace {

Reference hover_at(double z) {
    Reference r;
    r.position.z() = z;
    return r;
}

}  // namespace

TEST_CASE("proportional kick") {
    const CascadeGains g;
    const double dt = 2e-3;
    CHECK(test::close(Pid::proportional_derivative(0.5, 0.0, dt, g.z), 30.0, 1e-12));

    // Through the cascade the same error saturates the thrust command.
    VehicleParams p;
    Environment env;
    VehicleState s;
    s.position.z() = 0.5;
    PidBank bank;
    const CascadeOutput out =
        cascade_pid_step(s, hover_at(1.0), fluid_effects(s, p, env), bank, g, p, dt);
    CHECK(out.thrust == g.thrust_max);
    CHECK(out.saturated);
}

TEST_CASE("P + D part is linear in the error") {
    const CascadeGains g;
    test::Rng rng(37);
    for (int i = 0; i < 100; ++i) {
        const double e = rng.uniform(-1, 1), ed = rng.uniform(-1, 1);
        CHECK(test::close(Pid::proportional_derivative(2 * e, 2 * ed, 2e-3, g.z),
                          2 * Pid::proportional_derivative(e, ed, 2e-3, g.z), 1e-12));
    }
}

TEST_CASE("integrator grows linearly until the clamp") {
    PidGains g{0.0, 0.5, 0.0, 8.0};
    Pid pid;
    const double e = 0.125;
    const double bound = g.output_limit / g.ki;
    int k = 0;
    double previous = 0.0;
    while (pid.integral() < bound && k < 1000) {
        pid.step(e, 0.0, 2e-3, g);
        ++k;
        if (pid.integral() < bound) {
            CHECK(test::close(pid.integral() - previous, e, 1e-12));
        }
        previous = pid.integral();
    }
    CHECK(k == 128);
    for (int i = 0; i < 50; ++i) pid.step(e, 0.0, 2e-3, g);
    CHECK(pid.integral() == bound);
    CHECK(pid.step(-1e9, 0.0, 2e-3, g) == -g.output_limit);
}

TEST_CASE("integrator never exceeds its bound") {
    PidGains g{1.0, 0.3, 2.0, 1.5};
    Pid pid;
    test::Rng rng(41);
    for (int i = 0; i < 5000; ++i) {
        pid.step(rng.uniform(-3, 3), rng.uniform(-3, 3), 2e-3, g);
        CHECK(std::abs(pid.integral()) <= g.output_limit / g.ki);
    }
}

TEST_CASE("preset reproduces a target output") {
    PidGains g{60.0, 0.5, 3000.0, 8.0};
    Pid pid;
    pid.preset(1.25, 0.01, -0.2, 2e-3, g);
    Pid probe = pid;
    CHECK(test::close(probe.step(0.01, -0.2, 2e-3, g), 1.25, 1e-12));
}

TEST_CASE("hover equilibrium in air and water") {
    VehicleParams p;
    Environment env;
    const CascadeGains g;
    for (double z : {1.0, -0.5}) {
        VehicleState s;
        s.position.z() = z;
        PidBank bank;
        const FluidEffects fx = fluid_effects(s, p, env);
        const CascadeOutput out = cascade_pid_step(s, hover_at(z), fx, bank, g, p, 2e-3);
        CHECK(test::close(out.thrust, fx.total_mass(p) * fx.effective_gravity, 1e-12));
        CHECK(out.torque.isZero(1e-15));
        CHECK(out.attitude_ref.isZero(1e-15));
        CHECK_FALSE(out.saturated);
    }
}

TEST_CASE("horizontal error tilts the attitude reference toward the target") {
    VehicleParams p;
    Environment env;
    const CascadeGains g;
    VehicleState s;
    s.position.z() = 1.0;
    Reference r = hover_at(1.0);
    r.position.x() = 0.01;
    PidBank bank;
    const CascadeOutput fwd = cascade_pid_step(s, r, fluid_effects(s, p, env), bank, g, p, 2e-3);
    CHECK(fwd.attitude_ref.y() > 0.0);  // pitch up tips thrust toward +x
    CHECK(fwd.attitude_ref.x() == 0.0);

    r.position = {0.0, 1.0, 1.0};
    PidBank bank2;
    const CascadeOutput side = cascade_pid_step(s, r, fluid_effects(s, p, env), bank2, g, p, 2e-3);
    CHECK(side.attitude_ref.x() == -g.max_tilt);  // negative roll tips thrust toward +y
}

TEST_CASE("gain validation") {
    CascadeGains g;
    CHECK_NOTHROW(g.validate());
    g.roll.kp = -1.0;
    CHECK_THROWS_AS(g.validate(), InvalidArgument);
    g = {};
    g.z.output_limit = 0.0;
    CHECK_THROWS_AS(g.validate(), InvalidArgument);
    g = {};
    g.thrust_max = g.thrust_min;
    CHECK_THROWS_AS(g.validate(), InvalidArgument);
}
