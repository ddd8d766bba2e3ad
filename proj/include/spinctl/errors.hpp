#pragma once

#include <stdexcept>
#include <string>

namespace spinctl {

/// Root of every error thrown by the library.
class SpinError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (non-unitary matrix,
/// non-unit spin, zero horizon, ...).
class DomainError : public SpinError {
public:
    using SpinError::SpinError;
};

/// A spin vector too close to zero to be projected onto its sphere.
class DegenerateStateError : public SpinError {
public:
    using SpinError::SpinError;
};

class NumericBlowupError : public SpinError {
public:
    using SpinError::SpinError;
};

/// Raised for parameter combinations outside the supported theory
/// (e.g. the coupled Hamiltonian with μ₁ ≠ μ₂).
class UnsupportedParametersError : public SpinError {
public:
    using SpinError::SpinError;
};

/// Initial data that violates the phase-space constraints.
class ConstraintViolationError : public SpinError {
public:
    using SpinError::SpinError;
};

/// Coupled target rejected by the conserved-angle screen.
class InfeasibleTargetError : public SpinError {
public:
    using SpinError::SpinError;
};

class NonConvergenceError : public SpinError {
public:
    NonConvergenceError(const std::string& what, double best_residual)
        : SpinError(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// Malformed or incomplete scenario configuration; `field()` names the key.
class ConfigError : public SpinError {
public:
    ConfigError(const std::string& field, const std::string& what)
        : SpinError(what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace spinctl
