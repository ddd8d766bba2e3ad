#pragma once

// su(2) <-> R^3 dictionary and SU(2) helpers.
//
// Convention: hat(v) = -(i/2) (v_x σ1 + v_y σ2 + v_z σ3), so that
//   [hat(u), hat(v)] = hat(u × v).
// Dynamics run on Vector3; the matrices here are used as exact oracles.

#include <array>
#include <cmath>
#include <complex>

#include "spinctl/errors.hpp"
#include "spinctl/vector3.hpp"

namespace spinctl {

using Complex = std::complex<double>;

/// Row-major 2×2 complex matrix: {a00, a01, a10, a11}.
struct Mat2 {
    std::array<Complex, 4> a{};

    constexpr Complex operator()(int r, int c) const { return a[2 * r + c]; }
    constexpr Complex& operator()(int r, int c) { return a[2 * r + c]; }

    static Mat2 identity() { return {{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}}}; }
};

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
    return r;
}

inline Mat2 operator+(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int k = 0; k < 4; ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
}

inline Mat2 operator-(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int k = 0; k < 4; ++k) r.a[k] = x.a[k] - y.a[k];
    return r;
}

inline Mat2 operator*(Complex s, const Mat2& x) {
    Mat2 r;
    for (int k = 0; k < 4; ++k) r.a[k] = s * x.a[k];
    return r;
}

inline Mat2 adjoint(const Mat2& x) {
    return {{std::conj(x(0, 0)), std::conj(x(1, 0)), std::conj(x(0, 1)), std::conj(x(1, 1))}};
}

inline Complex trace(const Mat2& x) { return x(0, 0) + x(1, 1); }
inline Complex det(const Mat2& x) { return x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0); }

inline double max_abs_entry(const Mat2& x) {
    double m = 0.0;
    for (const auto& c : x.a) m = std::fmax(m, std::abs(c));
    return m;
}

/// v·σ as a Hermitian matrix.
inline Mat2 pauli_combination(const Vector3& v) {
    return {{Complex{v.z}, Complex{v.x, -v.y}, Complex{v.x, v.y}, Complex{-v.z}}};
}

/// Vector of a Hermitian traceless matrix written as v·σ.
inline Vector3 pauli_coefficients(const Mat2& h) {
    return {h(1, 0).real(), h(1, 0).imag(), h(0, 0).real()};
}

/// Element of su(2): anti-Hermitian, traceless.
struct SkewMatrix2 {
    Mat2 m;
};

/// Element of SU(2).
struct SU2Matrix {
    Mat2 m;

    static SU2Matrix identity() { return {Mat2::identity()}; }
};

inline SU2Matrix operator*(const SU2Matrix& x, const SU2Matrix& y) { return {x.m * y.m}; }

inline SkewMatrix2 hat(const Vector3& v) { return {Complex{0.0, -0.5} * pauli_combination(v)}; }

/// Inverse of hat; M = -(i/2) v·σ  =>  v·σ = 2i M.
inline Vector3 unhat(const SkewMatrix2& s) { return pauli_coefficients(Complex{0.0, 2.0} * s.m); }

inline SkewMatrix2 commutator(const SkewMatrix2& a, const SkewMatrix2& b) {
    return {a.m * b.m - b.m * a.m};
}

/// Closed-form exp(hat(v)) = cos(|v|/2) I - i sin(|v|/2) v̂·σ.
inline SU2Matrix su2_exp(const Vector3& v) {
    const double angle = norm(v);
    if (angle == 0.0) return SU2Matrix::identity();
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const Mat2 n = pauli_combination(v / angle);
    return {Complex{c} * Mat2::identity() + Complex{0.0, -s} * n};
}

inline constexpr double kUnitarityTolerance = 1e-9;

/// max-entry defects of U†U - I and det U - 1.
inline double unitarity_defect(const SU2Matrix& u) {
    return std::fmax(max_abs_entry(adjoint(u.m) * u.m - Mat2::identity()),
                     std::abs(det(u.m) - Complex{1.0}));
}

/// Hopf map U ↦ U†σ3U read back as a unit vector.
inline Vector3 hopf_project(const SU2Matrix& u) {
    if (unitarity_defect(u) > kUnitarityTolerance) {
        throw DomainError("hopf_project: matrix is not in SU(2)");
    }
    return pauli_coefficients(adjoint(u.m) * pauli_combination(kE3) * u.m);
}

/// Rotation of `v` about unit axis `n` by `angle` (Rodrigues).
inline Vector3 rotate_about(const Vector3& v, const Vector3& n, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return c * v + s * cross(n, v) + (1.0 - c) * dot(n, v) * n;
}

/// Closed-form solution of dS/dt = μ S×B for constant B: rotation about
/// -B̂ by μ‖B‖t.
inline Vector3 exact_single_propagator(const Vector3& s0, const Vector3& b, double mu, double t) {
    const double bn = norm(b);
    if (bn == 0.0 || mu * t == 0.0) return s0;
    return rotate_about(s0, -(b / bn), mu * bn * t);
}

/// Same flow evaluated in matrix form, S(t)·σ = U†(S0·σ)U with U = exp(hat(μtB)).
inline Vector3 conjugation_propagator(const Vector3& s0, const Vector3& b, double mu, double t) {
    const Mat2 u = su2_exp(mu * t * b).m;
    return pauli_coefficients(adjoint(u) * pauli_combination(s0) * u);
}

}  // namespace spinctl
