#pragma once

// Initial data for the three closed-form families of coupled extremals.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "spinctl/errors.hpp"
#include "spinctl/pmp.hpp"

namespace spinctl {

enum class Preset { DecoupledParallel, RigidPerpendicular, ZeroFieldPrecession };

inline Preset parse_preset(std::string_view name) {
    if (name == "decoupled-parallel") return Preset::DecoupledParallel;
    if (name == "rigid-perpendicular") return Preset::RigidPerpendicular;
    if (name == "zero-field-precession") return Preset::ZeroFieldPrecession;
    throw ConfigError("preset", "unknown preset '" + std::string(name) +
                                    "' (expected decoupled-parallel, rigid-perpendicular or zero-field-precession)");
}

/// decoupled-parallel:   s1 = s2 = e3, p1 = (0.6,0,0), p2 = (0,0.4,0); κ ≡ 0.
/// rigid-perpendicular:  s1 = e1, s2 = e2, p1 = s2, p2 = -s1; B = 2μ s2×s1,
///                       both spins turn in the xy-plane at rate 2μ².
/// zero-field-precession: μ = 0 (B ≡ 0), s1 = e1, s2 at 60° in the xy-plane,
///                       p1 = -p2 = 0.5 e3; S₋ precesses about the fixed S₊.
inline CoupledExtremalPoint preset_point(Preset preset, double mu = 1.0) {
    SpinParams params;
    params.mu1 = params.mu2 = mu;
    switch (preset) {
        case Preset::DecoupledParallel:
            return {kE3, kE3, {0.6, 0.0, 0.0}, {0.0, 0.4, 0.0}, params};
        case Preset::RigidPerpendicular:
            return {kE1, kE2, kE2, -kE1, params};
        case Preset::ZeroFieldPrecession: {
            params.mu1 = params.mu2 = 0.0;
            const double a = std::numbers::pi / 3.0;
            return {kE1, {std::cos(a), std::sin(a), 0.0}, {0.0, 0.0, 0.5}, {0.0, 0.0, -0.5}, params};
        }
    }
    throw ConfigError("preset", "unknown preset");
}

}  // namespace spinctl
