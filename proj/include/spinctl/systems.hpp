#pragma once

// Phase-space adapters binding the open-loop and extremal vector fields to
// the integrator. Layouts: spins first, then co-states.
//   SingleOpenLoopSystem   [s]
//   SingleExtremalSystem   [s, p]
//   CoupledOpenLoopSystem  [s1, s2]
//   CoupledExtremalSystem  [s1, s2, p1, p2]

#include <array>
#include <string_view>

#include "spinctl/dynamics.hpp"
#include "spinctl/integrate.hpp"
#include "spinctl/pmp.hpp"

namespace spinctl {

struct SingleOpenLoopSystem {
    static constexpr std::size_t kDim = 3;
    static constexpr std::array<std::string_view, 2> kInvariantNames{"|s|^2", "s.b"};
    using Point = PhasePoint<kDim>;

    Vector3 b;
    double mu = 1.0;
    double lambda = 1.0;

    static Point pack(const Vector3& s) {
        Point y;
        y.set_block(0, s);
        return y;
    }

    Point rhs(const Point& y) const { return pack(single_spin_rhs(y.block(0), b, mu)); }
    Point project(const Point& y) const { return project_state(y, std::array{lambda}); }
    Controls controls(const Point&) const { return {b, 0.0}; }
    std::array<double, 2> invariants(const Point& y) const {
        const Vector3 s = y.block(0);
        return {norm2(s), dot(s, b)};
    }
};

struct SingleExtremalSystem {
    static constexpr std::size_t kDim = 6;
    static constexpr std::array<std::string_view, 8> kInvariantNames{
        "|s|^2", "s.p", "|p|^2", "(sxp)_x", "(sxp)_y", "(sxp)_z", "H", "|B|"};
    using Point = PhasePoint<kDim>;

    double mu = 1.0;

    static Point pack(const Vector3& s, const Vector3& p) {
        Point y;
        y.set_block(0, s);
        y.set_block(1, p);
        return y;
    }
    SingleExtremalPoint point(const Point& y) const { return {y.block(0), y.block(1), mu}; }

    Point rhs(const Point& y) const {
        const auto [ds, dp] = extremal_rhs_single(point(y));
        return pack(ds, dp);
    }
    Point project(const Point& y) const { return project_state(y, std::array{1.0}); }
    Controls controls(const Point& y) const { return {feedback_field_single(point(y)), 0.0}; }
    double hamiltonian(const Point& y) const { return hamiltonian_single(point(y)); }
    std::array<double, 8> invariants(const Point& y) const {
        const Vector3 s = y.block(0);
        const Vector3 p = y.block(1);
        const Vector3 sp = cross(s, p);
        const auto pt = point(y);
        return {norm2(s), dot(s, p), norm2(p), sp.x, sp.y, sp.z, hamiltonian_single(pt),
                norm(feedback_field_single(pt))};
    }
};

struct CoupledOpenLoopSystem {
    static constexpr std::size_t kDim = 6;
    static constexpr std::array<std::string_view, 3> kInvariantNames{"|s1|^2", "|s2|^2", "s1.s2"};
    using Point = PhasePoint<kDim>;

    Controls controls_value;
    SpinParams params;

    static Point pack(const Vector3& s1, const Vector3& s2) {
        Point y;
        y.set_block(0, s1);
        y.set_block(1, s2);
        return y;
    }

    Point rhs(const Point& y) const {
        const auto [d1, d2] = coupled_rhs({y.block(0), y.block(1)}, controls_value, params);
        return pack(d1, d2);
    }
    Point project(const Point& y) const {
        return project_state(y, std::array{params.lambda1, params.lambda2});
    }
    Controls controls(const Point&) const { return controls_value; }
    std::array<double, 3> invariants(const Point& y) const {
        return {norm2(y.block(0)), norm2(y.block(1)), dot(y.block(0), y.block(1))};
    }
};

struct CoupledExtremalSystem {
    static constexpr std::size_t kDim = 12;
    static constexpr std::array<std::string_view, 10> kInvariantNames{
        "H", "Bx", "By", "Bz", "kappa", "s1.s2", "|s1|^2", "|s2|^2", "p1.s1", "p2.s2"};
    using Point = PhasePoint<kDim>;

    SpinParams params;

    static Point pack(const Vector3& s1, const Vector3& s2, const Vector3& p1, const Vector3& p2) {
        Point y;
        y.set_block(0, s1);
        y.set_block(1, s2);
        y.set_block(2, p1);
        y.set_block(3, p2);
        return y;
    }
    static Point pack(const CoupledExtremalPoint& pt) { return pack(pt.s1, pt.s2, pt.p1, pt.p2); }
    CoupledExtremalPoint point(const Point& y) const {
        return {y.block(0), y.block(1), y.block(2), y.block(3), params};
    }

    Point rhs(const Point& y) const {
        const CoupledDerivative d = extremal_rhs_coupled(point(y));
        return pack(d.ds1, d.ds2, d.dp1, d.dp2);
    }
    Point project(const Point& y) const {
        return project_state(y, std::array{params.lambda1, params.lambda2});
    }
    Controls controls(const Point& y) const { return feedback_controls(point(y)); }
    /// H_P at the feedback controls.
    double hamiltonian(const Point& y) const { return cost_rate(controls(y)); }
    std::array<double, 10> invariants(const Point& y) const {
        const ConservedReport r = conserved_report(point(y));
        return {r.hamiltonian,
                r.b_feedback.x,
                r.b_feedback.y,
                r.b_feedback.z,
                r.kappa_feedback,
                r.s1_dot_s2,
                r.norm_s1 * r.norm_s1,
                r.norm_s2 * r.norm_s2,
                r.p1_dot_s1,
                r.p2_dot_s2};
    }
};

}  // namespace spinctl
