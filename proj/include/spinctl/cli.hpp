#pragma once

// Command implementations behind the `spinctl` executable. Each returns a
// process exit status and writes only to the streams it is given.
//
// Exit codes:
//   0 ok, 1 I/O failure, 2 config/argument schema violation, 3 numeric
//   blowup, 4 constraint violation in initial data, 5 infeasible coupled
//   target, 6 shooting non-convergence, 7 verification tolerance breach.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <string>

#include "spinctl/config.hpp"
#include "spinctl/csv.hpp"
#include "spinctl/export.hpp"
#include "spinctl/steering.hpp"
#include "spinctl/systems.hpp"
#include "spinctl/verify.hpp"

namespace spinctl::cli {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kSchemaError = 2,
    kNumericBlowup = 3,
    kConstraintViolation = 4,
    kInfeasibleTarget = 5,
    kNonConvergence = 6,
    kToleranceBreach = 7,
};

inline std::string fmt(double v) { return format_number(v); }

inline std::string fmt(const Vector3& v) { return "(" + fmt(v.x) + ", " + fmt(v.y) + ", " + fmt(v.z) + ")"; }

/// Short form for tolerances and step sizes.
inline std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

namespace detail {

inline bool write_table(const std::string& path, const CsvTable& table, std::ostream& err) {
    std::ofstream os(path);
    if (!os) {
        err << "error: cannot open '" << path << "' for writing\n";
        return false;
    }
    write_csv(os, table);
    return static_cast<bool>(os);
}

template <std::size_t N>
void print_summary(const Trajectory<N>& traj, std::ostream& out) {
    out << "points: " << traj.size() << '\n';
    out << "final time: " << fmt(traj.times.back()) << '\n';
    out << "total cost: " << fmt(traj.total_cost()) << '\n';
    out << "invariant drift (max |q(t) - q(0)|):\n";
    for (const auto& [name, d] : traj.invariant_drift) out << "  " << name << ": " << fmt(d) << '\n';
}

template <typename System>
int run_system(const System& sys, const PhasePoint<System::kDim>& y0, const IntegratorConfig& icfg,
               const std::string& output_path, std::ostream& out, std::ostream& err) {
    const auto traj = integrate(sys, y0, icfg);
    if (!write_table(output_path, to_table(traj, sys), err)) return kIoError;
    print_summary(traj, out);
    return kOk;
}

}  // namespace detail

inline int run(const std::string& config_path, const std::string& output_path, std::ostream& out,
               std::ostream& err) {
    std::ifstream is(config_path);
    if (!is) {
        err << "error: cannot read config '" << config_path << "'\n";
        return kSchemaError;
    }
    try {
        const ScenarioConfig cfg = parse_scenario(is);
        const auto& p = cfg.params;
        switch (cfg.mode) {
            case Mode::SingleOpenLoop: {
                require_on_sphere(cfg.s1, p.lambda1, "s1");
                const SingleOpenLoopSystem sys{cfg.controls.b, p.mu1, p.lambda1};
                return detail::run_system(sys, SingleOpenLoopSystem::pack(cfg.s1), cfg.integrator, output_path, out, err);
            }
            case Mode::SingleExtremal: {
                const SingleExtremalPoint pt{cfg.s1, cfg.p1, p.mu1};
                validate(pt);
                const SingleExtremalSystem sys{p.mu1};
                return detail::run_system(sys, SingleExtremalSystem::pack(pt.s, pt.p), cfg.integrator, output_path, out,
                                          err);
            }
            case Mode::CoupledOpenLoop: {
                validate(CoupledState{cfg.s1, cfg.s2}, p);
                const CoupledOpenLoopSystem sys{cfg.controls, p};
                return detail::run_system(sys, CoupledOpenLoopSystem::pack(cfg.s1, cfg.s2), cfg.integrator,
                                          output_path, out, err);
            }
            case Mode::CoupledExtremal:
            case Mode::Preset: {
                const CoupledExtremalPoint pt{cfg.s1, cfg.s2, cfg.p1, cfg.p2, p};
                validate(pt);
                const CoupledExtremalSystem sys{p};
                return detail::run_system(sys, CoupledExtremalSystem::pack(pt), cfg.integrator, output_path, out, err);
            }
        }
        return kSchemaError;
    } catch (const ConfigError& e) {
        err << "config error [" << e.field() << "]: " << e.what() << '\n';
        return kSchemaError;
    } catch (const ConstraintViolationError& e) {
        err << "constraint violation: " << e.what() << '\n';
        return kConstraintViolation;
    } catch (const NumericBlowupError& e) {
        err << "numeric blowup: " << e.what() << '\n';
        return kNumericBlowup;
    } catch (const DegenerateStateError& e) {
        err << "numeric blowup: " << e.what() << '\n';
        return kNumericBlowup;
    } catch (const SpinError& e) {
        err << "error: " << e.what() << '\n';
        return kSchemaError;
    }
}

struct SingleSteerArgs {
    Vector3 from;
    Vector3 to;
    double horizon = 1.0;
    double mu = 1.0;
    double dt = 1e-4;
    std::optional<std::string> csv_out;
};

inline int steer_single(const SingleSteerArgs& a, std::ostream& out, std::ostream& err) {
    if (!(a.horizon > 0.0)) {
        err << "error: --horizon must be positive\n";
        return kSchemaError;
    }
    if (a.mu == 0.0) {
        err << "error: --mu must be nonzero\n";
        return kSchemaError;
    }
    try {
        const SteeringPlan plan = plan_single_steering(a.from, a.to, a.horizon, a.mu);
        IntegratorConfig icfg;
        icfg.dt = a.dt;
        const PlanCheck check = check_single_plan(plan, a.from, a.to, a.mu, icfg);
        out << "P0 = " << fmt(plan.initial_momenta[0]) << '\n';
        out << "B = " << fmt(plan.field) << '\n';
        out << "cost = " << fmt(plan.predicted_cost) << '\n';
        out << "trajectory cost = " << fmt(check.trajectory_cost) << '\n';
        out << "endpoint error = " << fmt(check.endpoint_error) << " rad\n";
        if (a.csv_out && !detail::write_table(*a.csv_out, to_table(check.trajectory, SingleExtremalSystem{a.mu}), err)) {
            return kIoError;
        }
        return kOk;
    } catch (const ConstraintViolationError& e) {
        err << "constraint violation: " << e.what() << '\n';
        return kConstraintViolation;
    } catch (const NumericBlowupError& e) {
        err << "numeric blowup: " << e.what() << '\n';
        return kNumericBlowup;
    } catch (const SpinError& e) {
        err << "error: " << e.what() << '\n';
        return kSchemaError;
    }
}

/// Coupled steering config keys: s1, s2, target_s1, target_s2, horizon,
/// mu (or mu1/mu2), lambda1, lambda2, guess_p1, guess_p2 (default 0), dt,
/// tolerance, max_iterations, fd_step, damping.
inline int steer_coupled(const std::string& config_path, const std::optional<std::string>& csv_out,
                         std::ostream& out, std::ostream& err) {
    std::ifstream is(config_path);
    if (!is) {
        err << "error: cannot read config '" << config_path << "'\n";
        return kSchemaError;
    }
    try {
        const KeyValues kv = parse_key_values(is);
        static const std::set<std::string> known{"s1", "s2", "target_s1", "target_s2", "horizon", "mu", "mu1",
                                                 "mu2", "lambda", "lambda1", "lambda2", "guess_p1", "guess_p2",
                                                 "dt", "tolerance", "max_iterations", "fd_step", "damping"};
        for (const auto& [k, v] : kv) {
            if (!known.contains(k)) throw ConfigError(k, "unknown field '" + k + "'");
        }
        const auto require = [&](const std::string& k) {
            auto it = kv.find(k);
            if (it == kv.end()) throw ConfigError(k, "missing required field '" + k + "'");
            return it->second;
        };
        const auto scalar_or = [&](const std::string& k, double fallback) {
            auto it = kv.find(k);
            return it == kv.end() ? fallback : parse_scalar(k, it->second);
        };
        const auto vector_or = [&](const std::string& k, Vector3 fallback) {
            auto it = kv.find(k);
            return it == kv.end() ? fallback : parse_vector(k, it->second);
        };

        const CoupledState start{parse_vector("s1", require("s1")), parse_vector("s2", require("s2"))};
        const CoupledState target{parse_vector("target_s1", require("target_s1")),
                                  parse_vector("target_s2", require("target_s2"))};
        const double horizon = parse_scalar("horizon", require("horizon"));
        if (!(horizon > 0.0)) throw ConfigError("horizon", "field 'horizon' must be positive");
        SpinParams params;
        const double mu = scalar_or("mu", 1.0);
        params.mu1 = scalar_or("mu1", mu);
        params.mu2 = scalar_or("mu2", mu);
        const double lambda = scalar_or("lambda", 1.0);
        params.lambda1 = scalar_or("lambda1", lambda);
        params.lambda2 = scalar_or("lambda2", lambda);

        ShootingConfig scfg;
        scfg.dt = scalar_or("dt", scfg.dt);
        scfg.endpoint_tolerance = scalar_or("tolerance", scfg.endpoint_tolerance);
        scfg.max_iterations = static_cast<int>(scalar_or("max_iterations", scfg.max_iterations));
        scfg.fd_step = scalar_or("fd_step", scfg.fd_step);
        scfg.damping = scalar_or("damping", scfg.damping);
        try {
            scfg.validate();
        } catch (const DomainError& e) {
            throw ConfigError("shooting", e.what());
        }

        const SteeringPlan plan = shoot_coupled(start, target, horizon, params, vector_or("guess_p1", {}),
                                                vector_or("guess_p2", {}), scfg);
        out << "P1(0) = " << fmt(plan.initial_momenta[0]) << '\n';
        out << "P2(0) = " << fmt(plan.initial_momenta[1]) << '\n';
        out << "B = " << fmt(plan.field) << '\n';
        out << "kappa = " << fmt(plan.kappa) << '\n';
        out << "cost = " << fmt(plan.predicted_cost) << '\n';
        out << "endpoint error = " << fmt(plan.endpoint_error) << " rad\n";
        out << "iterations = " << plan.iterations << '\n';
        if (csv_out) {
            IntegratorConfig icfg;
            icfg.dt = scfg.dt;
            icfg.horizon = horizon;
            const CoupledExtremalSystem sys{params};
            const auto traj = integrate(
                sys, CoupledExtremalSystem::pack(start.s1, start.s2, plan.initial_momenta[0], plan.initial_momenta[1]),
                icfg);
            if (!detail::write_table(*csv_out, to_table(traj, sys), err)) return kIoError;
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error [" << e.field() << "]: " << e.what() << '\n';
        return kSchemaError;
    } catch (const InfeasibleTargetError& e) {
        err << "infeasible target: " << e.what() << '\n';
        return kInfeasibleTarget;
    } catch (const NonConvergenceError& e) {
        err << "shooting did not converge; best residual = " << fmt(e.best_residual()) << " rad\n";
        return kNonConvergence;
    } catch (const ConstraintViolationError& e) {
        err << "constraint violation: " << e.what() << '\n';
        return kConstraintViolation;
    } catch (const NumericBlowupError& e) {
        err << "numeric blowup: " << e.what() << '\n';
        return kNumericBlowup;
    } catch (const SpinError& e) {
        err << "error: " << e.what() << '\n';
        return kSchemaError;
    }
}

inline constexpr double kSingleConservationTolerance = 1e-8;
inline constexpr double kCoupledConservationTolerance = 1e-6;

/// suite: "invariants", "brackets" or "all".
inline int verify(const std::string& suite, int trials, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    if (trials < 1) {
        err << "error: --trials must be >= 1\n";
        return kSchemaError;
    }
    if (suite != "invariants" && suite != "brackets" && suite != "all") {
        err << "error: --suite must be invariants, brackets or all\n";
        return kSchemaError;
    }
    bool ok = true;
    const auto breach = [&](const std::string& what, int trial) {
        ok = false;
        out << "  FAIL " << what << " worst at trial " << trial << " (seed " << seed << ")\n";
    };

    out << "seed: " << seed << '\n' << "trials: " << trials << '\n';
    if (suite == "invariants" || suite == "all") {
        const ConservationReport r = conservation_sweep(seed, trials);
        out << "[invariants] T=10 dt=1e-3 projection=off\n";
        out << "  single max drift: " << fmt(r.single_max_drift) << " (" << r.single_worst_invariant << ", tol "
            << fmt_short(kSingleConservationTolerance) << ")\n";
        out << "  coupled max relative drift: " << fmt(r.coupled_max_relative_drift) << " ("
            << r.coupled_worst_invariant << ", tol " << fmt_short(kCoupledConservationTolerance) << ")\n";
        if (r.single_max_drift > kSingleConservationTolerance) breach("single-spin conservation", r.single_worst_trial);
        if (r.coupled_max_relative_drift > kCoupledConservationTolerance) {
            breach("coupled conservation", r.coupled_worst_trial);
        }
    }
    if (suite == "brackets" || suite == "all") {
        const IntegrabilityReport r = integrability_certificate(seed, trials);
        out << "[brackets] h=" << fmt_short(kDefaultFdStep) << " tol " << fmt_short(kBracketTolerance) << '\n';
        out << "  max |{H,kappa}|: " << fmt(r.max_h_kappa) << '\n';
        out << "  max |{H,B_i}|: " << fmt(r.max_h_b) << '\n';
        out << "  max |{B_i,kappa}|: " << fmt(r.max_b_kappa) << '\n';
        if (!r.passed()) breach("bracket certificate", r.worst_trial);
        const ConsistencyReport c = hamilton_consistency(seed, trials);
        out << "  max |X_H(fd) - rhs| single: " << fmt(c.max_single) << '\n';
        out << "  max |X_H(fd) - rhs| coupled: " << fmt(c.max_coupled) << '\n';
        if (std::fmax(c.max_single, c.max_coupled) > kBracketTolerance) breach("Hamilton consistency", c.worst_trial);
    }
    out << (ok ? "result: PASS\n" : "result: FAIL\n");
    return ok ? kOk : kToleranceBreach;
}

}  // namespace spinctl::cli
