#pragma once

// Fixed-time steering: the closed-form single-spin plan and a shooting
// solver for the coupled extremal system.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "spinctl/errors.hpp"
#include "spinctl/integrate.hpp"
#include "spinctl/pmp.hpp"
#include "spinctl/systems.hpp"
#include "spinctl/vector3.hpp"

namespace spinctl {

struct SteeringPlan {
    std::vector<Vector3> initial_momenta;  // one per spin
    Vector3 field;                         // feedback field at t = 0 (constant along the extremal)
    double kappa = 0.0;
    double predicted_cost = 0.0;
    double horizon = 0.0;
    double endpoint_error = 0.0;  // radians; filled by the shooting solver / validation
    int iterations = 0;
};

/// Single spin, s0 → s1 in time `horizon`. The extremal rotates s0 in the
/// plane (s0, s1) at rate θ0/T, so P0 = θ0/(μ²T) û with û the unit tangent
/// at s0 pointing towards s1 and the cost is θ0²/(2μ²T).
inline SteeringPlan plan_single_steering(const Vector3& s0, const Vector3& s1, double horizon, double mu) {
    if (!(horizon > 0.0)) throw DomainError("plan_single_steering: horizon must be positive");
    if (mu == 0.0 || !std::isfinite(mu)) throw DomainError("plan_single_steering: mu must be nonzero");
    require_on_sphere(s0, 1.0, "from");
    require_on_sphere(s1, 1.0, "to");

    const double theta = angle_between(s0, s1);
    Vector3 dir;
    if (std::fabs(theta - std::numbers::pi) <= 1e-9) {
        // antipodal: every tangent direction works; pick one deterministically
        dir = orthogonal_unit(s0);
    } else {
        const Vector3 t = s1 - dot(s1, s0) * s0;
        const double tn = norm(t);
        dir = tn > 0.0 ? t / tn : Vector3{};
    }

    SteeringPlan plan;
    const Vector3 p0 = (theta / (mu * mu * horizon)) * dir;
    plan.initial_momenta = {p0};
    plan.field = mu * cross(p0, s0);
    plan.predicted_cost = theta * theta / (2.0 * mu * mu * horizon);
    plan.horizon = horizon;
    return plan;
}

struct PlanCheck {
    double endpoint_error = 0.0;  // radians
    double trajectory_cost = 0.0;
    Trajectory<SingleExtremalSystem::kDim> trajectory;
};

/// Re-integrates a single-spin plan and measures how well it lands.
inline PlanCheck check_single_plan(const SteeringPlan& plan, const Vector3& s0, const Vector3& target, double mu,
                                   IntegratorConfig cfg) {
    cfg.horizon = plan.horizon;
    const SingleExtremalSystem sys{mu};
    PlanCheck out;
    out.trajectory = integrate(sys, SingleExtremalSystem::pack(s0, plan.initial_momenta.at(0)), cfg);
    out.endpoint_error = angle_between(out.trajectory.states.back().block(0), target);
    out.trajectory_cost = out.trajectory.total_cost();
    return out;
}

/// Necessary condition for extremal reachability: the inter-spin angle is
/// conserved along every coupled extremal.
inline bool coupled_feasibility(const CoupledState& start, const CoupledState& target, double tol) {
    return std::fabs(angle_between(start.s1, start.s2) - angle_between(target.s1, target.s2)) <= tol;
}

struct ShootingConfig {
    int max_iterations = 50;
    double endpoint_tolerance = 1e-8;  // radians, per spin
    double fd_step = 1e-6;
    double damping = 0.5;
    double dt = 1e-3;

    void validate() const {
        if (max_iterations <= 0) throw DomainError("max_iterations must be positive");
        if (!(endpoint_tolerance >= 1e-10)) throw DomainError("endpoint_tolerance must be >= 1e-10");
        if (!(fd_step > 0.0)) throw DomainError("fd_step must be positive");
        if (!(damping > 0.0 && damping <= 1.0)) throw DomainError("damping must lie in (0, 1]");
        if (!(dt > 0.0)) throw DomainError("dt must be positive");
    }
};

namespace detail {

/// Log-map coordinates of `f` in the tangent frame at `g` (both nonzero);
/// the Euclidean length equals the angle between them.
inline Eigen::Vector2d sphere_log(const Vector3& f, const Vector3& g, const TangentFrame& frame) {
    const Vector3 fh = normalized(f);
    const Vector3 gh = normalized(g);
    const Vector3 v = fh - dot(fh, gh) * gh;
    const double s = norm(v);
    const double theta = std::atan2(s, dot(fh, gh));
    const double scale = s > 0.0 ? theta / s : 1.0;
    return {scale * dot(v, frame.a), scale * dot(v, frame.b)};
}

}  // namespace detail

/// Damped Gauss–Newton shooting on the four tangent components of (P1(0), P2(0)).
/// The conserved inter-spin angle makes the endpoint map rank-deficient, so
/// steps use the minimum-norm least-squares solution.
inline SteeringPlan shoot_coupled(const CoupledState& start, const CoupledState& target, double horizon,
                                  const SpinParams& params, const Vector3& guess_p1, const Vector3& guess_p2,
                                  const ShootingConfig& cfg = {}) {
    cfg.validate();
    if (!(horizon > 0.0)) throw DomainError("shoot_coupled: horizon must be positive");
    if (!params.identical()) throw UnsupportedParametersError("shoot_coupled requires mu1 == mu2");
    validate(start, params);
    validate(target, params);
    if (!coupled_feasibility(start, target, 10.0 * cfg.endpoint_tolerance)) {
        throw InfeasibleTargetError("target changes the angle between the spins, which every extremal conserves");
    }

    const TangentFrame from1 = tangent_frame(start.s1);
    const TangentFrame from2 = tangent_frame(start.s2);
    const TangentFrame to1 = tangent_frame(target.s1);
    const TangentFrame to2 = tangent_frame(target.s2);

    const CoupledExtremalSystem sys{params};
    IntegratorConfig icfg;
    icfg.dt = cfg.dt;
    icfg.horizon = horizon;
    icfg.projection = true;
    icfg.record_stride = std::numeric_limits<std::size_t>::max();

    using Vec4 = Eigen::Matrix<double, 4, 1>;
    const auto momenta = [&](const Vec4& x) {
        return std::pair{x[0] * from1.a + x[1] * from1.b, x[2] * from2.a + x[3] * from2.b};
    };

    struct Eval {
        Vec4 r;
        double max_angle;
        double cost;
    };
    const auto evaluate = [&](const Vec4& x) {
        const auto [p1, p2] = momenta(x);
        const auto traj = integrate(sys, CoupledExtremalSystem::pack(start.s1, start.s2, p1, p2), icfg);
        const auto& end = traj.states.back();
        const Eigen::Vector2d r1 = detail::sphere_log(end.block(0), target.s1, to1);
        const Eigen::Vector2d r2 = detail::sphere_log(end.block(1), target.s2, to2);
        Eval e;
        e.r << r1, r2;
        e.max_angle = std::fmax(r1.norm(), r2.norm());
        e.cost = traj.total_cost();
        return e;
    };

    Vec4 x;
    x << dot(guess_p1, from1.a), dot(guess_p1, from1.b), dot(guess_p2, from2.a), dot(guess_p2, from2.b);
    Eval cur = evaluate(x);
    double best = cur.max_angle;

    for (int it = 0;; ++it) {
        if (cur.max_angle <= cfg.endpoint_tolerance) {
            const auto [p1, p2] = momenta(x);
            const CoupledExtremalPoint pt{start.s1, start.s2, p1, p2, params};
            SteeringPlan plan;
            plan.initial_momenta = {p1, p2};
            plan.field = feedback_field_coupled(pt);
            plan.kappa = feedback_kappa(pt);
            plan.predicted_cost = cur.cost;
            plan.horizon = horizon;
            plan.endpoint_error = cur.max_angle;
            plan.iterations = it;
            return plan;
        }
        if (it >= cfg.max_iterations) break;

        Eigen::Matrix4d jac;
        for (int j = 0; j < 4; ++j) {
            Vec4 xp = x;
            xp[j] += cfg.fd_step;
            jac.col(j) = (evaluate(xp).r - cur.r) / cfg.fd_step;
        }
        Eigen::JacobiSVD<Eigen::Matrix4d> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
        svd.setThreshold(1e-8);
        const Vec4 step = -svd.solve(cur.r);

        double alpha = 1.0;
        Vec4 x_next = x + step;
        Eval next = evaluate(x_next);
        for (int k = 0; k < 30 && next.r.norm() > cur.r.norm() && cfg.damping < 1.0; ++k) {
            alpha *= cfg.damping;
            x_next = x + alpha * step;
            next = evaluate(x_next);
        }
        x = x_next;
        cur = next;
        best = std::fmin(best, cur.max_angle);
    }
    throw NonConvergenceError("shooting did not reach the endpoint tolerance", best);
}

}  // namespace spinctl
