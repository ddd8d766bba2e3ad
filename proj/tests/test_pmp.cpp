#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <limits>

#include "spinctl/algebra.hpp"
#include "spinctl/integrate.hpp"
#include "spinctl/pmp.hpp"
#include "spinctl/presets.hpp"
#include "spinctl/sampling.hpp"
#include "spinctl/systems.hpp"
#include "test_support.hpp"

namespace spinctl {
namespace {

using test::diff;

/// Positive pairing on su(2) matching the dot product: ⟨A, B⟩ = -2 Tr(AB).
double pairing(const SkewMatrix2& a, const SkewMatrix2& b) { return -2.0 * trace(a.m * b.m).real(); }

/// H_P written in matrix form, independent of the vector formulas.
double pontryagin_matrix_form(const CoupledExtremalPoint& pt, const Vector3& b, double kappa) {
    const auto s1 = hat(pt.s1), s2 = hat(pt.s2), p1 = hat(pt.p1), p2 = hat(pt.p2), bh = hat(b);
    const auto lin = [](double a, const SkewMatrix2& x, double c, const SkewMatrix2& y) {
        return SkewMatrix2{Complex{a} * x.m + Complex{c} * y.m};
    };
    const SkewMatrix2 ds1 = lin(pt.params.mu1, commutator(s1, bh), kappa, commutator(s1, s2));
    const SkewMatrix2 ds2 = lin(pt.params.mu2, commutator(s2, bh), kappa, commutator(s2, s1));
    return pairing(p1, ds1) + pairing(p2, ds2) - 0.5 * pairing(bh, bh) - 0.5 * kappa * kappa;
}

TEST(SingleFeedback, Examples) {
    EXPECT_EQ(feedback_field_single({kE3, {}, 1.0}), (Vector3{}));
    EXPECT_EQ(feedback_field_single({kE3, 2.5 * kE1, 1.5}), (Vector3{0, -1.5 * 2.5, 0}));
    const double h = std::numbers::pi / 2;
    EXPECT_LT(diff(feedback_field_single({kE3, {h, 0, 0}, 1.0}), {0, -h, 0}), 1e-15);
}

TEST(SingleFeedback, MaximizesPontryaginHamiltonian) {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        const auto pt = random_single_point(rng, rng.uniform(0.5, 2), 1.0);
        const Vector3 b = feedback_field_single(pt);
        const double hmax = pontryagin_hamiltonian_single(pt, b);
        EXPECT_NEAR(hmax, hamiltonian_single(pt), 1e-14);
        for (int k = 0; k < 5; ++k) {
            const Vector3 db{rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)};
            EXPECT_LT(pontryagin_hamiltonian_single(pt, b + db), hmax);
        }
    }
}

TEST(SingleHamiltonian, Examples) {
    EXPECT_EQ(hamiltonian_single({kE3, 0.7 * kE3, 1.0}), 0.0);
    EXPECT_EQ(hamiltonian_single({kE3, kE1, 2.0}), 2.0);
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const auto pt = random_single_point(rng, rng.uniform(0.2, 3), 2.0);
        EXPECT_NEAR(hamiltonian_single(pt) - 0.5 * norm2(feedback_field_single(pt)), 0.0, 1e-14);
    }
}

TEST(SingleExtremalRhs, Examples) {
    const auto [ds0, dp0] = extremal_rhs_single({kE3, {}, 1.0});
    EXPECT_EQ(ds0, (Vector3{}));
    EXPECT_EQ(dp0, (Vector3{}));
    const auto [ds, dp] = extremal_rhs_single({kE3, kE1, 1.0});
    EXPECT_EQ(ds, kE1);
    EXPECT_EQ(dp, -kE3);
}

TEST(SingleExtremalRhs, AngularMomentumIsConstantAlongFlow) {
    Rng rng(77);
    const auto pt = random_single_point(rng, 1.0, 1.0);
    const SingleExtremalSystem sys{1.0};
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.horizon = 2.0;
    cfg.projection = false;
    const auto traj = integrate(sys, SingleExtremalSystem::pack(pt.s, pt.p), cfg);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
        const Vector3 lp = cross(traj.states[i + 1].block(0), traj.states[i + 1].block(1));
        const Vector3 lm = cross(traj.states[i - 1].block(0), traj.states[i - 1].block(1));
        worst = std::fmax(worst, max_abs((lp - lm) / (2 * cfg.dt)));
    }
    EXPECT_LE(worst, 1e-8);
}

TEST(CoupledFeedback, KappaExamples) {
    const SpinParams prm;
    EXPECT_EQ(feedback_kappa({kE1, kE2, kE3, kE3, prm}), 0.0);
    EXPECT_EQ(feedback_kappa({kE3, kE3, kE1, kE2, prm}), 0.0);
    EXPECT_EQ(feedback_kappa({kE1, kE2, kE3, {}, prm}), 1.0);
}

TEST(CoupledFeedback, FieldExamples) {
    EXPECT_EQ(feedback_field_coupled({kE1, kE2, {}, {}, {}}), (Vector3{}));
    EXPECT_EQ(feedback_field_coupled({kE3, kE3, kE1, kE2, {}}), (Vector3{1, -1, 0}));
    Rng rng(6);
    for (int i = 0; i < 20; ++i) {
        const double mu = rng.uniform(0.3, 2.0);
        const Vector3 s1 = rng.unit_vector(), s2 = rng.unit_vector();
        const SpinParams prm{mu, mu, 1, 1};
        EXPECT_LT(diff(feedback_field_coupled({s1, s2, s2, -s1, prm}), 2 * mu * cross(s2, s1)), 1e-14);
    }
}

TEST(CoupledHamiltonian, Examples) {
    EXPECT_EQ(hamiltonian_coupled({kE1, kE2, {}, {}, {}}), 0.0);
    const auto rigid = preset_point(Preset::RigidPerpendicular, 1.0);
    EXPECT_EQ(feedback_kappa(rigid), 0.0);
    EXPECT_EQ(norm(feedback_field_coupled(rigid)), 2.0);
    EXPECT_EQ(hamiltonian_coupled(rigid), 2.0);
}

TEST(CoupledHamiltonian, RequiresIdenticalSpins) {
    EXPECT_THROW(hamiltonian_coupled({kE1, kE2, {}, {}, {1.0, 2.0, 1, 1}}), UnsupportedParametersError);
    EXPECT_NO_THROW(extremal_rhs_coupled({kE1, kE2, kE3, kE3, {1.0, 2.0, 1, 1}}));
}

TEST(CoupledHamiltonian, IdentityWithFeedbackPointwise) {
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        const auto pt = random_coupled_point(rng, SpinParams{}, 1.5);
        const double b2 = norm2(feedback_field_coupled(pt));
        const double k = feedback_kappa(pt);
        EXPECT_NEAR(hamiltonian_coupled(pt), 0.5 * b2 + 0.5 * k * k, 1e-14);
    }
}

TEST(CoupledHamiltonian, EqualsMaximumOverControls) {
    // Oracle: matrix-form H_P maximized by FD gradient ascent from zero controls.
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        const auto pt = random_coupled_point(rng, SpinParams{}, 1.0);
        std::array<double, 4> x{};
        const auto value = [&](const std::array<double, 4>& u) {
            return pontryagin_matrix_form(pt, {u[0], u[1], u[2]}, u[3]);
        };
        for (int it = 0; it < 20; ++it) {
            std::array<double, 4> g{};
            for (int j = 0; j < 4; ++j) {
                auto xp = x, xm = x;
                xp[j] += 1e-4;
                xm[j] -= 1e-4;
                g[j] = (value(xp) - value(xm)) / 2e-4;
            }
            for (int j = 0; j < 4; ++j) x[j] += 0.5 * g[j];
        }
        EXPECT_NEAR(value(x), hamiltonian_coupled(pt), 1e-9);
        EXPECT_NEAR(pontryagin_matrix_form(pt, feedback_field_coupled(pt), feedback_kappa(pt)),
                    pontryagin_hamiltonian_coupled(pt, feedback_controls(pt)), 1e-13);
    }
}

TEST(CoupledFeedback, StationarityOfPontryaginHamiltonian) {
    Rng rng(10);
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
        const auto pt = random_coupled_point(rng, SpinParams{}, 1.0);
        const Controls c = feedback_controls(pt);
        double worst = 0.0;
        for (int j = 0; j < 4; ++j) {
            Controls cp = c, cm = c;
            if (j < 3) {
                cp.b[j] += h;
                cm.b[j] -= h;
            } else {
                cp.kappa += h;
                cm.kappa -= h;
            }
            const double g = (pontryagin_hamiltonian_coupled(pt, cp) - pontryagin_hamiltonian_coupled(pt, cm)) / (2 * h);
            worst = std::fmax(worst, std::fabs(g));
        }
        EXPECT_LE(worst, 1e-7);
    }
}

TEST(CoupledExtremalRhs, ZeroMomentaAreStationary) {
    const CoupledDerivative d = extremal_rhs_coupled({kE1, {0, 0.6, 0.8}, {}, {}, {}});
    EXPECT_EQ(d.ds1, (Vector3{}));
    EXPECT_EQ(d.ds2, (Vector3{}));
    EXPECT_EQ(d.dp1, (Vector3{}));
    EXPECT_EQ(d.dp2, (Vector3{}));
}

TEST(CoupledExtremalRhs, RigidRotationData) {
    const CoupledDerivative d = extremal_rhs_coupled({kE1, kE2, kE2, -kE1, {}});
    EXPECT_EQ(d.ds1, (Vector3{0, 2, 0}));
    EXPECT_EQ(d.ds2, (Vector3{-2, 0, 0}));
    EXPECT_EQ(d.dp1, (Vector3{-2, 0, 0}));
    EXPECT_EQ(d.dp2, (Vector3{0, -2, 0}));
}

TEST(CoupledExtremalRhs, ParallelSpinsPrecessAboutSharedField) {
    const Vector3 s{0.0, 0.6, 0.8};
    const Vector3 p{1.0, 0.0, 0.0};
    const CoupledExtremalPoint pt{s, s, p, p, {}};
    EXPECT_EQ(feedback_kappa(pt), 0.0);
    const Vector3 b = feedback_field_coupled(pt);
    const CoupledDerivative d = extremal_rhs_coupled(pt);
    EXPECT_LT(diff(d.ds1, single_spin_rhs(s, b, 1.0)), 1e-15);
    EXPECT_LT(diff(d.ds2, single_spin_rhs(s, b, 1.0)), 1e-15);
}

TEST(CoupledExtremalRhs, CorrectionOnlyTouchesNormalComponents) {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const auto pt = random_coupled_point(rng, SpinParams{}, 1.0);
        const CoupledDerivative a = ambient_extremal_rhs_coupled(pt);
        const CoupledDerivative c = extremal_rhs_coupled(pt);
        EXPECT_EQ(a.ds1, c.ds1);
        EXPECT_EQ(a.ds2, c.ds2);
        const auto tangent = [](const Vector3& v, const Vector3& s) { return v - dot(v, s) * s; };
        EXPECT_LT(diff(tangent(a.dp1, pt.s1), tangent(c.dp1, pt.s1)), 1e-14);
        EXPECT_LT(diff(tangent(a.dp2, pt.s2), tangent(c.dp2, pt.s2)), 1e-14);
        // the corrected field keeps p·s stationary, the ambient one in general does not
        EXPECT_LT(std::fabs(dot(c.dp1, pt.s1) + dot(pt.p1, c.ds1)), 1e-14);
        EXPECT_LT(std::fabs(dot(c.dp2, pt.s2) + dot(pt.p2, c.ds2)), 1e-14);
        const double kappa = feedback_kappa(pt);
        EXPECT_NEAR(dot(a.dp1, pt.s1) + dot(pt.p1, a.ds1), kappa * dot(pt.p2, cross(pt.s1, pt.s2)), 1e-13);
    }
}

TEST(CoupledExtremalRhs, DifferenceCoStateEquation) {
    // Differencing the adjoint equations: dP₋/dt = P₋ × (μB + κS₊).
    Rng rng(14);
    double printed_sign_gap = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double mu = rng.uniform(0.3, 2.0);
        const auto pt = random_coupled_point(rng, {mu, mu, 1, 1}, 1.0);
        const PlusMinus pm = plus_minus(pt);
        const Vector3 b = feedback_field_coupled(pt);
        const double k = feedback_kappa(pt);
        const CoupledDerivative d = ambient_extremal_rhs_coupled(pt);
        EXPECT_LT(diff(d.dp1 - d.dp2, cross(pm.p_minus, mu * b + k * pm.s_plus)), 1e-13);
        printed_sign_gap = std::fmax(printed_sign_gap, max_abs(d.dp1 - d.dp2 - cross(pm.p_minus, mu * b - k * pm.s_plus)));
    }
    EXPECT_GT(printed_sign_gap, 1e-3);
}

TEST(ConservedReport, StationaryPoint) {
    const ConservedReport r = conserved_report({kE1, kE2, {}, {}, {}});
    EXPECT_EQ(r.hamiltonian, 0.0);
    EXPECT_EQ(r.b_feedback, (Vector3{}));
    EXPECT_EQ(r.kappa_feedback, 0.0);
    EXPECT_EQ(r.s1_dot_s2, 0.0);
}

TEST(ConservedReport, ParallelogramLaw) {
    Rng rng(15);
    for (int i = 0; i < 100; ++i) {
        const auto pt = random_coupled_point(rng, {1, 1, rng.uniform(0.5, 2), rng.uniform(0.5, 2)}, 1.0);
        const ConservedReport r = conserved_report(pt);
        const double lhs = r.norm_s_plus * r.norm_s_plus + r.norm_s_minus * r.norm_s_minus;
        EXPECT_NEAR(lhs, 2 * (r.norm_s1 * r.norm_s1 + r.norm_s2 * r.norm_s2), 1e-13);
    }
}

TEST(ConservedReport, ConstantAlongIntegratedExtremal) {
    Rng rng(16);
    const CoupledExtremalSystem sys{SpinParams{}};
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.horizon = 5.0;
    cfg.projection = false;
    cfg.record_stride = 100;
    for (int trial = 0; trial < 5; ++trial) {
        const auto pt = random_coupled_point(rng, SpinParams{}, 1.0);
        const auto traj = integrate(sys, CoupledExtremalSystem::pack(pt), cfg);
        const ConservedReport r0 = conserved_report(pt);
        for (const auto& y : traj.states) {
            const ConservedReport r = conserved_report(sys.point(y));
            EXPECT_NEAR(r.hamiltonian, r0.hamiltonian, 1e-9);
            EXPECT_LT(diff(r.b_feedback, r0.b_feedback), 1e-9);
            EXPECT_NEAR(r.kappa_feedback, r0.kappa_feedback, 1e-9);
            EXPECT_NEAR(r.s1_dot_s2, r0.s1_dot_s2, 1e-9);
            EXPECT_NEAR(r.norm_s_plus, r0.norm_s_plus, 1e-9);
            EXPECT_NEAR(r.norm_s_minus, r0.norm_s_minus, 1e-9);
        }
    }
}

TEST(PlusMinus, ExamplesAndInverse) {
    const Vector3 s{0, 0.6, 0.8};
    EXPECT_EQ(plus_minus({s, s, kE1, kE2, {}}).s_minus, (Vector3{}));
    Rng rng(18);
    for (int i = 0; i < 100; ++i) {
        const auto pt = random_coupled_point(rng, SpinParams{}, 1.0);
        const auto back = from_plus_minus(plus_minus(pt), pt.params);
        EXPECT_LE(diff(back.s1, pt.s1), 4e-16);
        EXPECT_LE(diff(back.s2, pt.s2), 4e-16);
        EXPECT_LE(diff(back.p1, pt.p1), 4e-16);
        EXPECT_LE(diff(back.p2, pt.p2), 4e-16);
    }
    // dyadic data round-trips bit-exactly
    const CoupledExtremalPoint d{{0.5, 0.25, 0.75}, {0.125, -0.5, 1}, {1, 2, 3}, {-0.25, 0.5, 4}, {}};
    const auto back = from_plus_minus(plus_minus(d), d.params);
    EXPECT_EQ(back.s1, d.s1);
    EXPECT_EQ(back.p2, d.p2);
}

TEST(PlusMinus, SumPrecessesAboutFieldAlongExtremal) {
    Rng rng(19);
    const double mu = 1.3;
    const CoupledExtremalSystem sys{{mu, mu, 1, 1}};
    const auto pt = random_coupled_point(rng, sys.params, 1.0);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.horizon = 1.0;
    cfg.projection = false;
    const auto traj = integrate(sys, CoupledExtremalSystem::pack(pt), cfg);
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < traj.size(); ++i) {
        const auto sp = [&](std::size_t k) { return traj.states[k].block(0) + traj.states[k].block(1); };
        // five-point stencil, truncation O(dt^4)
        const Vector3 fd = (sp(i - 2) - 8.0 * sp(i - 1) + 8.0 * sp(i + 1) - sp(i + 2)) / (12 * cfg.dt);
        worst = std::fmax(worst, max_abs(fd - mu * cross(sp(i), traj.controls[i].b)));
    }
    EXPECT_LE(worst, 1e-8);
}

TEST(ZeroFieldFamily, DifferencePrecessesAboutFixedSum) {
    const auto pt = preset_point(Preset::ZeroFieldPrecession);
    const CoupledExtremalSystem sys{pt.params};
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.horizon = 5.0;
    cfg.projection = false;
    const auto traj = integrate(sys, CoupledExtremalSystem::pack(pt), cfg);
    const PlusMinus pm0 = plus_minus(pt);
    const double kappa = feedback_kappa(pt);
    ASSERT_GT(std::fabs(kappa), 0.5);
    for (std::size_t i = 0; i < traj.size(); i += 250) {
        const auto cur = plus_minus(sys.point(traj.states[i]));
        EXPECT_LE(diff(cur.s_plus, pm0.s_plus), 1e-9);
        // closed form: S₋(t) = rotation of S₋(0) about Ŝ₊ by -κ‖S₊‖t
        const Vector3 expected = rotate_about(pm0.s_minus, normalized(pm0.s_plus), -kappa * norm(pm0.s_plus) * traj.times[i]);
        EXPECT_LE(diff(cur.s_minus, expected), 1e-9);
    }
}

}  // namespace
}  // namespace spinctl
