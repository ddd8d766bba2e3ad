#pragma once

// Seeded, platform-stable sampling of spins and co-states. Only the engine
// output (fully specified by the standard) is used, never the library
// distributions, so a seed reproduces the same points everywhere.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "spinctl/pmp.hpp"
#include "spinctl/vector3.hpp"

namespace spinctl {

class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Vector3 unit_vector() {
        const double z = uniform(-1.0, 1.0);
        const double phi = 2.0 * std::numbers::pi * uniform();
        const double r = std::sqrt(std::fmax(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    /// Vector with components in [-scale, scale], projected tangent to `s`.
    Vector3 tangent(const Vector3& s, double scale) {
        const Vector3 v{uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
        return v - (dot(v, s) / norm2(s)) * s;
    }

private:
    std::mt19937_64 engine_;
};

inline SingleExtremalPoint random_single_point(Rng& rng, double mu, double momentum_scale) {
    const Vector3 s = rng.unit_vector();
    return {s, rng.tangent(s, momentum_scale), mu};
}

inline CoupledExtremalPoint random_coupled_point(Rng& rng, const SpinParams& params, double momentum_scale) {
    const Vector3 s1 = params.lambda1 * rng.unit_vector();
    const Vector3 s2 = params.lambda2 * rng.unit_vector();
    const Vector3 p1 = rng.tangent(s1, momentum_scale);
    const Vector3 p2 = rng.tangent(s2, momentum_scale);
    return {s1, s2, p1, p2, params};
}

}  // namespace spinctl
