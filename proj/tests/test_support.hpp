#pragma once

// Test-only oracles, written independently of the library code paths.

#include <array>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "spinctl/vector3.hpp"

namespace spinctl::test {

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;

inline M2 mul(const M2& a, const M2& b) {
    M2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline M2 add(const M2& a, const M2& b, C sb = 1.0) {
    M2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] + sb * b[i][j];
    return r;
}

inline M2 scale(C s, const M2& a) {
    M2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = s * a[i][j];
    return r;
}

inline const M2 kSigma1{{{C{0}, C{1}}, {C{1}, C{0}}}};
inline const M2 kSigma2{{{C{0}, C{0, -1}}, {C{0, 1}, C{0}}}};
inline const M2 kSigma3{{{C{1}, C{0}}, {C{0}, C{-1}}}};
inline const M2 kId{{{C{1}, C{0}}, {C{0}, C{1}}}};

/// -(i/2)(x σ1 + y σ2 + z σ3) assembled from the explicit Pauli matrices.
inline M2 skew_of(double x, double y, double z) {
    return scale(C{0, -0.5}, add(add(scale(x, kSigma1), scale(y, kSigma2)), scale(z, kSigma3)));
}

/// Truncated power series exp(A) = Σ_{k<terms} A^k / k!.
inline M2 exp_series(const M2& a, int terms = 30) {
    M2 sum = kId;
    M2 term = kId;
    for (int k = 1; k < terms; ++k) {
        term = scale(1.0 / k, mul(term, a));
        sum = add(sum, term);
    }
    return sum;
}

inline double max_diff(const M2& a, const M2& b) {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::fmax(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

inline double diff(const Vector3& a, const Vector3& b) { return max_abs(a - b); }

/// Rodrigues rotation, written out component-wise.
inline Vector3 rodrigues(const Vector3& v, const Vector3& axis, double angle) {
    const double n = std::sqrt(axis.x * axis.x + axis.y * axis.y + axis.z * axis.z);
    const double kx = axis.x / n, ky = axis.y / n, kz = axis.z / n;
    const double c = std::cos(angle), s = std::sin(angle), kv = kx * v.x + ky * v.y + kz * v.z;
    return {v.x * c + (ky * v.z - kz * v.y) * s + kx * kv * (1 - c),
            v.y * c + (kz * v.x - kx * v.z) * s + ky * kv * (1 - c),
            v.z * c + (kx * v.y - ky * v.x) * s + kz * kv * (1 - c)};
}

inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("spinctl_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream(path) << text;
    return path.string();
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace spinctl::test
