#pragma once

// Pontryagin Hamiltonians, optimal feedback laws and closed-loop extremal
// vector fields for one spin and for two spins coupled by a scalar κ.
//
// H_P is built as ⟨P, state velocity⟩ - cost, which gives
//   single:  B = μ P×S
//   coupled: κ = (P1 - P2)·(S1×S2),  B = μ1 P1×S1 + μ2 P2×S2.

#include <cmath>
#include <utility>

#include "spinctl/dynamics.hpp"
#include "spinctl/errors.hpp"
#include "spinctl/vector3.hpp"

namespace spinctl {

struct SingleExtremalPoint {
    Vector3 s;
    Vector3 p;
    double mu = 1.0;
};

struct CoupledExtremalPoint {
    Vector3 s1;
    Vector3 s2;
    Vector3 p1;
    Vector3 p2;
    SpinParams params;
};

/// Time derivatives of a coupled phase point.
struct CoupledDerivative {
    Vector3 ds1;
    Vector3 ds2;
    Vector3 dp1;
    Vector3 dp2;
};

inline void require_tangent(const Vector3& p, const Vector3& s, const std::string& name,
                            double tol = kConstraintTolerance) {
    if (!is_finite(p) || std::fabs(dot(p, s)) > tol) {
        throw ConstraintViolationError(name + " is not tangent to its spin (p·s = " +
                                       std::to_string(dot(p, s)) + ")");
    }
}

inline void validate(const SingleExtremalPoint& pt) {
    require_on_sphere(pt.s, 1.0, "s");
    require_tangent(pt.p, pt.s, "p");
}

inline void validate(const CoupledExtremalPoint& pt) {
    validate(CoupledState{pt.s1, pt.s2}, pt.params);
    require_tangent(pt.p1, pt.s1, "p1");
    require_tangent(pt.p2, pt.s2, "p2");
}

// ---------------------------------------------------------------- single spin

inline Vector3 feedback_field_single(const SingleExtremalPoint& pt) { return pt.mu * cross(pt.p, pt.s); }

/// H_P(S, P; B) = μ P·(S×B) - ½‖B‖².
inline double pontryagin_hamiltonian_single(const SingleExtremalPoint& pt, const Vector3& b) {
    return pt.mu * dot(pt.p, cross(pt.s, b)) - 0.5 * norm2(b);
}

/// (μ²/2)‖S×P‖², the maximized H_P.
inline double hamiltonian_single(const SingleExtremalPoint& pt) {
    return 0.5 * pt.mu * pt.mu * norm2(cross(pt.s, pt.p));
}

inline std::pair<Vector3, Vector3> extremal_rhs_single(const SingleExtremalPoint& pt) {
    const double mu2 = pt.mu * pt.mu;
    const Vector3 ps = cross(pt.p, pt.s);
    return {mu2 * cross(pt.s, ps), mu2 * cross(pt.p, ps)};
}

// ---------------------------------------------------------------- coupled spins

inline double feedback_kappa(const CoupledExtremalPoint& pt) {
    return dot(pt.p1 - pt.p2, cross(pt.s1, pt.s2));
}

inline Vector3 feedback_field_coupled(const CoupledExtremalPoint& pt) {
    return pt.params.mu1 * cross(pt.p1, pt.s1) + pt.params.mu2 * cross(pt.p2, pt.s2);
}

inline Controls feedback_controls(const CoupledExtremalPoint& pt) {
    return {feedback_field_coupled(pt), feedback_kappa(pt)};
}

/// H_P(S, P; B, κ) = P1·Ṡ1 + P2·Ṡ2 - ½‖B‖² - ½κ² for arbitrary controls.
inline double pontryagin_hamiltonian_coupled(const CoupledExtremalPoint& pt, const Controls& c) {
    const auto [ds1, ds2] = coupled_rhs({pt.s1, pt.s2}, c, pt.params);
    return dot(pt.p1, ds1) + dot(pt.p2, ds2) - cost_rate(c);
}

/// ½‖B_fb‖² + ½κ_fb², defined for identical spins only.
inline double hamiltonian_coupled(const CoupledExtremalPoint& pt) {
    if (!pt.params.identical()) {
        throw UnsupportedParametersError("hamiltonian_coupled requires mu1 == mu2");
    }
    return cost_rate(feedback_controls(pt));
}

/// State and adjoint equations with the feedback substituted, exactly as the
/// ambient ℝ¹² vector field. This field does not keep Pα·Sα = 0.
inline CoupledDerivative ambient_extremal_rhs_coupled(const CoupledExtremalPoint& pt) {
    const auto& prm = pt.params;
    const Vector3 b = feedback_field_coupled(pt);
    const double kappa = feedback_kappa(pt);
    const Vector3 s12 = cross(pt.s1, pt.s2);
    const Vector3 dp = pt.p1 - pt.p2;
    return {prm.mu1 * cross(pt.s1, b) + kappa * s12,
            prm.mu2 * cross(pt.s2, b) - kappa * s12,
            prm.mu1 * cross(pt.p1, b) + kappa * cross(dp, pt.s2),
            prm.mu2 * cross(pt.p2, b) - kappa * cross(dp, pt.s1)};
}

/// Extremal flow on T*(S²×S²): the ambient field above with each Ṗα
/// corrected along Sα so that d(Pα·Sα)/dt = 0. Tangential parts, Ṡα, B and κ
/// are unchanged.
inline CoupledDerivative extremal_rhs_coupled(const CoupledExtremalPoint& pt) {
    CoupledDerivative d = ambient_extremal_rhs_coupled(pt);
    const auto fix = [](Vector3& dp, const Vector3& s, const Vector3& p, const Vector3& ds) {
        const double n2 = norm2(s);
        if (n2 > 0.0) dp -= ((dot(s, dp) + dot(p, ds)) / n2) * s;
    };
    fix(d.dp1, pt.s1, pt.p1, d.ds1);
    fix(d.dp2, pt.s2, pt.p2, d.ds2);
    return d;
}

struct ConservedReport {
    double hamiltonian = 0.0;
    Vector3 b_feedback;
    double kappa_feedback = 0.0;
    double s1_dot_s2 = 0.0;
    double norm_s1 = 0.0;
    double norm_s2 = 0.0;
    double norm_s_plus = 0.0;
    double norm_s_minus = 0.0;
    double p1_dot_s1 = 0.0;  // orthogonality defects
    double p2_dot_s2 = 0.0;
};

/// `hamiltonian` is H_P at the feedback controls, ½‖B‖² + ½κ², which
/// coincides with hamiltonian_coupled whenever the latter is defined.
inline ConservedReport conserved_report(const CoupledExtremalPoint& pt) {
    ConservedReport r;
    const Controls c = feedback_controls(pt);
    r.hamiltonian = cost_rate(c);
    r.b_feedback = c.b;
    r.kappa_feedback = c.kappa;
    r.s1_dot_s2 = dot(pt.s1, pt.s2);
    r.norm_s1 = norm(pt.s1);
    r.norm_s2 = norm(pt.s2);
    r.norm_s_plus = norm(pt.s1 + pt.s2);
    r.norm_s_minus = norm(pt.s1 - pt.s2);
    r.p1_dot_s1 = dot(pt.p1, pt.s1);
    r.p2_dot_s2 = dot(pt.p2, pt.s2);
    return r;
}

// ---------------------------------------------------------------- S±, P±

struct PlusMinus {
    Vector3 s_plus;
    Vector3 s_minus;
    Vector3 p_plus;
    Vector3 p_minus;
};

inline PlusMinus plus_minus(const CoupledExtremalPoint& pt) {
    return {pt.s1 + pt.s2, pt.s1 - pt.s2, pt.p1 + pt.p2, pt.p1 - pt.p2};
}

inline CoupledExtremalPoint from_plus_minus(const PlusMinus& pm, const SpinParams& params) {
    return {0.5 * (pm.s_plus + pm.s_minus), 0.5 * (pm.s_plus - pm.s_minus),
            0.5 * (pm.p_plus + pm.p_minus), 0.5 * (pm.p_plus - pm.p_minus), params};
}

}  // namespace spinctl
