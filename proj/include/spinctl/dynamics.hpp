#pragma once

// Open-loop equations of motion, dS/dt = μ S×B (+ κ coupling), and the
// running cost ½(‖B‖² + κ²).

#include <cmath>
#include <string>
#include <utility>

#include "spinctl/errors.hpp"
#include "spinctl/vector3.hpp"

namespace spinctl {

inline constexpr double kConstraintTolerance = 1e-9;

struct SpinParams {
    double mu1 = 1.0;
    double mu2 = 1.0;
    double lambda1 = 1.0;
    double lambda2 = 1.0;

    bool identical() const { return std::fabs(mu1 - mu2) <= 1e-12; }

    void validate() const {
        if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
            throw DomainError("spin lengths lambda1, lambda2 must be positive");
        }
    }
};

struct Controls {
    Vector3 b;
    double kappa = 0.0;
};

struct CoupledState {
    Vector3 s1;
    Vector3 s2;
};

/// Throws ConstraintViolationError unless ‖s‖ = radius within tolerance.
inline void require_on_sphere(const Vector3& s, double radius, const std::string& name,
                              double tol = kConstraintTolerance) {
    if (!is_finite(s) || std::fabs(norm(s) - radius) > tol) {
        throw ConstraintViolationError(name + " is not on its sphere (|" + name + "| = " +
                                       std::to_string(norm(s)) + ", expected " +
                                       std::to_string(radius) + ")");
    }
}

inline void validate(const CoupledState& st, const SpinParams& p) {
    p.validate();
    require_on_sphere(st.s1, p.lambda1, "s1");
    require_on_sphere(st.s2, p.lambda2, "s2");
}

inline Vector3 single_spin_rhs(const Vector3& s, const Vector3& b, double mu) {
    return mu * cross(s, b);
}

inline std::pair<Vector3, Vector3> coupled_rhs(const CoupledState& st, const Controls& c,
                                               const SpinParams& p) {
    const Vector3 s12 = cross(st.s1, st.s2);
    return {p.mu1 * cross(st.s1, c.b) + c.kappa * s12, p.mu2 * cross(st.s2, c.b) - c.kappa * s12};
}

inline double cost_rate(const Controls& c) { return 0.5 * (norm2(c.b) + c.kappa * c.kappa); }

}  // namespace spinctl
