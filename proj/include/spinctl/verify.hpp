#pragma once

// Finite-difference certificates for the Hamiltonian structure of the
// extremal flows. Phase points are flat ℝ³ⁿ×ℝ³ⁿ vectors laid out as
// [S_1..S_n, P_1..P_n]; brackets are the canonical ambient ones,
//   {f, g} = Σ ∂f/∂S·∂g/∂P - ∂f/∂P·∂g/∂S.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "spinctl/integrate.hpp"
#include "spinctl/pmp.hpp"
#include "spinctl/sampling.hpp"
#include "spinctl/systems.hpp"

namespace spinctl {

inline constexpr double kDefaultFdStep = 1e-5;
inline constexpr double kBracketTolerance = 1e-5;

template <std::size_t N>
using ScalarField = std::function<double(const PhasePoint<N>&)>;

/// Central-difference gradient.
template <std::size_t N>
PhasePoint<N> gradient_fd(const ScalarField<N>& f, const PhasePoint<N>& y, double h) {
    PhasePoint<N> g;
    for (std::size_t i = 0; i < N; ++i) {
        PhasePoint<N> yp = y;
        PhasePoint<N> ym = y;
        yp[i] += h;
        ym[i] -= h;
        g[i] = (f(yp) - f(ym)) / (2.0 * h);
    }
    return g;
}

template <std::size_t N>
double bracket_fd(const ScalarField<N>& f, const ScalarField<N>& g, const PhasePoint<N>& y,
                  double h = kDefaultFdStep) {
    static_assert(N % 6 == 0, "phase point must be [S..., P...]");
    if (!(h > 0.0)) throw DomainError("bracket_fd: h must be positive");
    constexpr std::size_t half = N / 2;
    const PhasePoint<N> df = gradient_fd(f, y, h);
    const PhasePoint<N> dg = gradient_fd(g, y, h);
    double sum = 0.0;
    for (std::size_t i = 0; i < half; ++i) sum += df[i] * dg[half + i] - df[half + i] * dg[i];
    return sum;
}

/// (∂H/∂P, -∂H/∂S) by central differences.
template <std::size_t N>
PhasePoint<N> hamiltonian_vector_field_fd(const ScalarField<N>& hamiltonian, const PhasePoint<N>& y,
                                          double h = kDefaultFdStep) {
    static_assert(N % 6 == 0, "phase point must be [S..., P...]");
    if (!(h > 0.0)) throw DomainError("hamiltonian_vector_field_fd: h must be positive");
    constexpr std::size_t half = N / 2;
    const PhasePoint<N> g = gradient_fd(hamiltonian, y, h);
    PhasePoint<N> x;
    for (std::size_t i = 0; i < half; ++i) {
        x[i] = g[half + i];
        x[half + i] = -g[i];
    }
    return x;
}

// ---------------------------------------------------------------- fields

inline ScalarField<6> single_hamiltonian_field(double mu) {
    return [mu](const PhasePoint<6>& y) { return hamiltonian_single({y.block(0), y.block(1), mu}); };
}

/// ½‖B‖² + ½κ² with B, κ read straight off the ambient coordinates.
/// Its Hamiltonian field is ambient_extremal_rhs_coupled.
inline ScalarField<12> coupled_hamiltonian_ambient_field(const SpinParams& params) {
    return [params](const PhasePoint<12>& y) {
        const CoupledExtremalPoint pt{y.block(0), y.block(1), y.block(2), y.block(3), params};
        return cost_rate(feedback_controls(pt));
    };
}

/// κ extended off the constraint set so that it is invariant under
/// Sα → cSα, Pα → Pα/c:
///   κ̃ = (λ2/|S2|) S2·(P1×S1) + (λ1/|S1|) S1·(P2×S2).
/// Equals κ whenever |Sα| = λα.
inline double kappa_extension(const PhasePoint<12>& y, const SpinParams& params) {
    const Vector3 s1 = y.block(0);
    const Vector3 s2 = y.block(1);
    const Vector3 p1 = y.block(2);
    const Vector3 p2 = y.block(3);
    return (params.lambda2 / norm(s2)) * dot(s2, cross(p1, s1)) +
           (params.lambda1 / norm(s1)) * dot(s1, cross(p2, s2));
}

/// Coupled Hamiltonian extended as ½‖B‖² + ½κ̃²; equal to hamiltonian_coupled
/// on the constraint set, and its ambient Hamiltonian field is the
/// constraint-tangent extremal_rhs_coupled.
inline ScalarField<12> coupled_hamiltonian_field(const SpinParams& params) {
    if (!params.identical()) throw UnsupportedParametersError("coupled Hamiltonian requires mu1 == mu2");
    return [params](const PhasePoint<12>& y) {
        const Vector3 b = params.mu1 * cross(y.block(2), y.block(0)) + params.mu2 * cross(y.block(3), y.block(1));
        const double k = kappa_extension(y, params);
        return 0.5 * (norm2(b) + k * k);
    };
}

inline ScalarField<12> kappa_field() {
    return [](const PhasePoint<12>& y) { return dot(y.block(2) - y.block(3), cross(y.block(0), y.block(1))); };
}

inline ScalarField<12> kappa_extension_field(const SpinParams& params) {
    return [params](const PhasePoint<12>& y) { return kappa_extension(y, params); };
}

inline ScalarField<12> field_component_field(const SpinParams& params, int component) {
    return [params, component](const PhasePoint<12>& y) {
        const Vector3 b = params.mu1 * cross(y.block(2), y.block(0)) + params.mu2 * cross(y.block(3), y.block(1));
        return b[component];
    };
}

// ---------------------------------------------------------------- sweeps

struct BracketSet {
    double h_kappa = 0.0;
    std::array<double, 3> h_b{};
    std::array<double, 3> b_kappa{};

    double max_abs() const {
        double m = std::fabs(h_kappa);
        for (double v : h_b) m = std::fmax(m, std::fabs(v));
        for (double v : b_kappa) m = std::fmax(m, std::fabs(v));
        return m;
    }
};

inline BracketSet bracket_deviations(const CoupledExtremalPoint& pt, double h = kDefaultFdStep) {
    const auto y = CoupledExtremalSystem::pack(pt);
    const auto ham = coupled_hamiltonian_field(pt.params);
    const auto kappa = kappa_extension_field(pt.params);
    BracketSet out;
    out.h_kappa = bracket_fd(ham, kappa, y, h);
    for (int i = 0; i < 3; ++i) {
        const auto bi = field_component_field(pt.params, i);
        out.h_b[i] = bracket_fd(ham, bi, y, h);
        out.b_kappa[i] = bracket_fd(bi, kappa, y, h);
    }
    return out;
}

struct IntegrabilityReport {
    std::uint64_t seed = 0;
    int trials = 0;
    double max_h_kappa = 0.0;
    double max_h_b = 0.0;
    double max_b_kappa = 0.0;
    int worst_trial = 0;

    double max_deviation() const { return std::fmax(max_h_kappa, std::fmax(max_h_b, max_b_kappa)); }
    bool passed(double tol = kBracketTolerance) const { return max_deviation() <= tol; }
};

/// Trial k draws its point from Rng(seed, k): identical-spin (μ = 1, λ = 1)
/// constraint points with co-state components in [-1, 1].
inline IntegrabilityReport integrability_certificate(std::uint64_t seed, int trials, double h = kDefaultFdStep) {
    if (trials < 1) throw DomainError("integrability_certificate: trials must be >= 1");
    IntegrabilityReport rep;
    rep.seed = seed;
    rep.trials = trials;
    double worst = -1.0;
    for (int k = 0; k < trials; ++k) {
        Rng rng(seed, static_cast<std::uint64_t>(k));
        const BracketSet b = bracket_deviations(random_coupled_point(rng, SpinParams{}, 1.0), h);
        rep.max_h_kappa = std::fmax(rep.max_h_kappa, std::fabs(b.h_kappa));
        for (int i = 0; i < 3; ++i) {
            rep.max_h_b = std::fmax(rep.max_h_b, std::fabs(b.h_b[i]));
            rep.max_b_kappa = std::fmax(rep.max_b_kappa, std::fabs(b.b_kappa[i]));
        }
        if (b.max_abs() > worst) {
            worst = b.max_abs();
            rep.worst_trial = k;
        }
    }
    return rep;
}

struct ConsistencyReport {
    double max_single = 0.0;   // max |X_H^fd - analytic| over single-spin points
    double max_coupled = 0.0;  // same for the coupled identical-spin system
    int worst_trial = 0;
};

/// Compares FD Hamiltonian vector fields with extremal_rhs_single and
/// extremal_rhs_coupled at seeded constraint points.
inline ConsistencyReport hamilton_consistency(std::uint64_t seed, int trials, double h = kDefaultFdStep) {
    if (trials < 1) throw DomainError("hamilton_consistency: trials must be >= 1");
    ConsistencyReport rep;
    double worst = -1.0;
    const SingleExtremalSystem single{1.0};
    const CoupledExtremalSystem coupled{SpinParams{}};
    const auto h_single = single_hamiltonian_field(1.0);
    const auto h_coupled = coupled_hamiltonian_field(SpinParams{});
    for (int k = 0; k < trials; ++k) {
        Rng rng(seed, static_cast<std::uint64_t>(k));
        const auto sp = random_single_point(rng, 1.0, 1.0);
        const auto ys = SingleExtremalSystem::pack(sp.s, sp.p);
        const double ds = max_abs(hamiltonian_vector_field_fd(h_single, ys, h) - single.rhs(ys));
        const auto cp = random_coupled_point(rng, SpinParams{}, 1.0);
        const auto yc = CoupledExtremalSystem::pack(cp);
        const double dc = max_abs(hamiltonian_vector_field_fd(h_coupled, yc, h) - coupled.rhs(yc));
        rep.max_single = std::fmax(rep.max_single, ds);
        rep.max_coupled = std::fmax(rep.max_coupled, dc);
        if (std::fmax(ds, dc) > worst) {
            worst = std::fmax(ds, dc);
            rep.worst_trial = k;
        }
    }
    return rep;
}

struct ConservationReport {
    double single_max_drift = 0.0;             // absolute, over all single-spin invariants
    double coupled_max_relative_drift = 0.0;   // over all coupled invariants
    std::string single_worst_invariant;
    std::string coupled_worst_invariant;
    int single_worst_trial = 0;
    int coupled_worst_trial = 0;
};

/// Integrates seeded single and coupled (μ = 1) extremals with projection
/// off and records the worst invariant drift.
inline ConservationReport conservation_sweep(std::uint64_t seed, int trials, double horizon = 10.0, double dt = 1e-3) {
    if (trials < 1) throw DomainError("conservation_sweep: trials must be >= 1");
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.horizon = horizon;
    cfg.projection = false;
    cfg.record_stride = std::numeric_limits<std::size_t>::max();

    ConservationReport rep;
    const SingleExtremalSystem single{1.0};
    const CoupledExtremalSystem coupled{SpinParams{}};
    for (int k = 0; k < trials; ++k) {
        Rng rng(seed, static_cast<std::uint64_t>(k));
        const auto sp = random_single_point(rng, 1.0, 1.0);
        const auto ts = integrate(single, SingleExtremalSystem::pack(sp.s, sp.p), cfg);
        for (const auto& [name, d] : ts.invariant_drift) {
            if (d > rep.single_max_drift || rep.single_worst_invariant.empty()) {
                rep.single_max_drift = std::fmax(rep.single_max_drift, d);
                rep.single_worst_invariant = name;
                rep.single_worst_trial = k;
            }
        }
        const auto cp = random_coupled_point(rng, SpinParams{}, 1.0);
        const auto tc = integrate(coupled, CoupledExtremalSystem::pack(cp), cfg);
        for (const auto& [name, d] : tc.invariant_drift) {
            const double rel = tc.relative_drift(name);
            if (rel > rep.coupled_max_relative_drift || rep.coupled_worst_invariant.empty()) {
                rep.coupled_max_relative_drift = std::fmax(rep.coupled_max_relative_drift, rel);
                rep.coupled_worst_invariant = name;
                rep.coupled_worst_trial = k;
            }
        }
    }
    return rep;
}

}  // namespace spinctl
