#pragma once

#include <cmath>
#include <random>

#include "mhauv/types.hpp"

namespace test {

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool rel_close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    mhauv::Vec3 vec3(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

/// Random state with moderate attitude and rates, z in [z_lo, z_hi].
inline mhauv::VehicleState random_state(Rng& rng, double z_lo, double z_hi, double angle = 0.3) {
    mhauv::VehicleState s;
    s.position = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(z_lo, z_hi)};
    s.body_velocity = rng.vec3(-1.0, 1.0);
    s.attitude = {rng.uniform(-angle, angle), rng.uniform(-angle, angle), rng.uniform(-3.0, 3.0)};
    s.body_rates = rng.vec3(-1.0, 1.0);
    return s;
}

}  // namespace test
