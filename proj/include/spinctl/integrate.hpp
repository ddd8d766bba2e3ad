#pragma once

// Fixed-step RK4 with optional constraint projection, trapezoid cost
// accumulation and invariant-drift tracking.
//
// A System supplies:
//   static constexpr std::size_t kDim;            phase-space dimension
//   static constexpr std::array<std::string_view, K> kInvariantNames;
//   PhasePoint<kDim> rhs(const PhasePoint<kDim>&) const;
//   PhasePoint<kDim> project(const PhasePoint<kDim>&) const;
//   Controls controls(const PhasePoint<kDim>&) const;
//   std::array<double, K> invariants(const PhasePoint<kDim>&) const;

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spinctl/dynamics.hpp"
#include "spinctl/errors.hpp"
#include "spinctl/vector3.hpp"

namespace spinctl {

template <std::size_t N>
struct PhasePoint {
    std::array<double, N> v{};

    static constexpr std::size_t size() { return N; }

    double operator[](std::size_t i) const { return v[i]; }
    double& operator[](std::size_t i) { return v[i]; }

    /// 3-vector block k (components 3k..3k+2).
    Vector3 block(std::size_t k) const { return {v[3 * k], v[3 * k + 1], v[3 * k + 2]}; }
    void set_block(std::size_t k, const Vector3& b) {
        v[3 * k] = b.x;
        v[3 * k + 1] = b.y;
        v[3 * k + 2] = b.z;
    }

    PhasePoint& operator+=(const PhasePoint& o) {
        for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
        return *this;
    }
    PhasePoint& operator*=(double s) {
        for (auto& x : v) x *= s;
        return *this;
    }

    bool finite() const {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    }

    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

template <std::size_t N>
PhasePoint<N> operator+(PhasePoint<N> a, const PhasePoint<N>& b) {
    return a += b;
}
template <std::size_t N>
PhasePoint<N> operator-(PhasePoint<N> a, const PhasePoint<N>& b) {
    for (std::size_t i = 0; i < N; ++i) a.v[i] -= b.v[i];
    return a;
}
template <std::size_t N>
PhasePoint<N> operator*(double s, PhasePoint<N> a) {
    return a *= s;
}

template <std::size_t N>
double max_abs(const PhasePoint<N>& a) {
    double m = 0.0;
    for (double x : a.v) m = std::fmax(m, std::fabs(x));
    return m;
}

/// Rescale each spin block to its radius and, when the point carries
/// co-states (N = 6S: spins first, then momenta), remove the component of
/// each momentum along its spin. Idempotent.
template <std::size_t N, std::size_t S>
PhasePoint<N> project_state(const PhasePoint<N>& y, const std::array<double, S>& radii) {
    static_assert(N == 3 * S || N == 6 * S, "phase point must hold S spins, optionally S momenta");
    PhasePoint<N> out = y;
    for (std::size_t k = 0; k < S; ++k) {
        const Vector3 s = y.block(k);
        const double n = norm(s);
        if (!(n > 1e-12) || !std::isfinite(n)) {
            throw DegenerateStateError("project_state: spin " + std::to_string(k + 1) + " has zero length");
        }
        const Vector3 s_proj = (radii[k] / n) * s;
        out.set_block(k, s_proj);
        if constexpr (N == 6 * S) {
            const Vector3 p = y.block(S + k);
            out.set_block(S + k, p - (dot(p, s_proj) / norm2(s_proj)) * s_proj);
        }
    }
    return out;
}

struct IntegratorConfig {
    double dt = 1e-3;
    double horizon = 1.0;
    bool projection = true;
    std::size_t record_stride = 1;

    void validate() const {
        if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
        if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw DomainError("horizon must be non-negative");
        if (record_stride < 1) throw DomainError("record_stride must be >= 1");
    }
};

template <std::size_t N>
struct Trajectory {
    std::vector<double> times;
    std::vector<PhasePoint<N>> states;
    std::vector<Controls> controls;
    std::vector<double> running_cost;
    std::map<std::string, double> invariant_drift;    // max |q(t) - q(0)|
    std::map<std::string, double> invariant_initial;  // q(0)

    std::size_t size() const { return times.size(); }
    double total_cost() const { return running_cost.empty() ? 0.0 : running_cost.back(); }

    /// max |q(t) - q(0)| / max(1, |q(0)|)
    double relative_drift(const std::string& name) const {
        return invariant_drift.at(name) / std::fmax(1.0, std::fabs(invariant_initial.at(name)));
    }
};

/// Classical RK4 step for rhs(t, y).
template <typename Y, typename Rhs>
Y rk4_step(const Rhs& rhs, const Y& y, double t, double dt) {
    if (!(dt > 0.0)) throw DomainError("rk4_step: dt must be positive");
    const Y k1 = rhs(t, y);
    const Y k2 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k1);
    const Y k3 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k2);
    const Y k4 = rhs(t + dt, y + dt * k3);
    Y out = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!out.finite()) throw NumericBlowupError("rk4_step: non-finite state at t = " + std::to_string(t + dt));
    return out;
}

template <typename System>
Trajectory<System::kDim> integrate(const System& sys, const PhasePoint<System::kDim>& y0,
                                   const IntegratorConfig& cfg) {
    cfg.validate();
    using Y = PhasePoint<System::kDim>;
    const auto rhs = [&sys](double, const Y& y) { return sys.rhs(y); };

    std::size_t full_steps = 0;
    double tail = 0.0;
    if (cfg.horizon >= cfg.dt) {
        full_steps = static_cast<std::size_t>(std::floor(cfg.horizon / cfg.dt + 1e-9));
        tail = cfg.horizon - static_cast<double>(full_steps) * cfg.dt;
        if (tail <= 1e-12 * std::fmax(1.0, cfg.horizon)) tail = 0.0;
    }
    const std::size_t total_steps = full_steps + (tail > 0.0 ? 1 : 0);

    Trajectory<System::kDim> traj;
    const auto names = System::kInvariantNames;
    const auto inv0 = sys.invariants(y0);
    std::array<double, names.size()> drift{};

    Y y = y0;
    Controls c = sys.controls(y);
    double rate = cost_rate(c);
    double cost = 0.0;
    double t = 0.0;

    const auto record = [&] {
        traj.times.push_back(t);
        traj.states.push_back(y);
        traj.controls.push_back(c);
        traj.running_cost.push_back(cost);
    };
    record();

    for (std::size_t k = 1; k <= total_steps; ++k) {
        const bool is_tail = k > full_steps;
        const double h = is_tail ? tail : cfg.dt;
        y = rk4_step(rhs, y, t, h);
        if (cfg.projection) y = sys.project(y);
        t = k == total_steps ? cfg.horizon : static_cast<double>(k) * cfg.dt;

        c = sys.controls(y);
        const double new_rate = cost_rate(c);
        cost += 0.5 * h * (rate + new_rate);
        rate = new_rate;

        const auto inv = sys.invariants(y);
        for (std::size_t i = 0; i < inv.size(); ++i) {
            drift[i] = std::fmax(drift[i], std::fabs(inv[i] - inv0[i]));
        }
        if (k % cfg.record_stride == 0 || k == total_steps) record();
    }

    for (std::size_t i = 0; i < names.size(); ++i) {
        traj.invariant_drift[std::string(names[i])] = drift[i];
        traj.invariant_initial[std::string(names[i])] = inv0[i];
    }
    return traj;
}

}  // namespace spinctl
