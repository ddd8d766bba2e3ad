#pragma once

#include <cmath>
#include <ostream>

namespace spinctl {

/// Plain 3-vector in ℝ³; spins, co-states and fields all use it.
struct Vector3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vector3& operator+=(const Vector3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vector3& operator-=(const Vector3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vector3& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    friend constexpr bool operator==(const Vector3&, const Vector3&) = default;
};

constexpr Vector3 operator+(Vector3 a, const Vector3& b) { return a += b; }
constexpr Vector3 operator-(Vector3 a, const Vector3& b) { return a -= b; }
constexpr Vector3 operator-(const Vector3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vector3 operator*(double s, Vector3 a) { return a *= s; }
constexpr Vector3 operator*(Vector3 a, double s) { return a *= s; }
constexpr Vector3 operator/(Vector3 a, double s) { return a *= (1.0 / s); }

constexpr double dot(const Vector3& a, const Vector3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vector3 cross(const Vector3& a, const Vector3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

constexpr double norm2(const Vector3& a) { return dot(a, a); }
inline double norm(const Vector3& a) { return std::sqrt(norm2(a)); }

inline double max_abs(const Vector3& a) {
    return std::fmax(std::fabs(a.x), std::fmax(std::fabs(a.y), std::fabs(a.z)));
}

inline bool is_finite(const Vector3& a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

inline Vector3 normalized(const Vector3& a) { return a / norm(a); }

/// Angle between two nonzero vectors, accurate near 0 and π.
inline double angle_between(const Vector3& a, const Vector3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

inline constexpr Vector3 kE1{1.0, 0.0, 0.0};
inline constexpr Vector3 kE2{0.0, 1.0, 0.0};
inline constexpr Vector3 kE3{0.0, 0.0, 1.0};

/// Unit vector orthogonal to `s`, built from the first standard basis vector
/// with the smallest |component along s| (ties go to the lower index).
inline Vector3 orthogonal_unit(const Vector3& s) {
    const Vector3 basis[3] = {kE1, kE2, kE3};
    const Vector3 sh = normalized(s);
    int best = 0;
    for (int i = 1; i < 3; ++i) {
        if (std::fabs(sh[i]) < std::fabs(sh[best])) best = i;
    }
    return normalized(basis[best] - dot(basis[best], sh) * sh);
}

/// Deterministic orthonormal tangent frame (e_a, e_b) at `s`; e_b = ŝ × e_a.
struct TangentFrame {
    Vector3 a;
    Vector3 b;
};

inline TangentFrame tangent_frame(const Vector3& s) {
    const Vector3 a = orthogonal_unit(s);
    return {a, cross(normalized(s), a)};
}

inline std::ostream& operator<<(std::ostream& os, const Vector3& v) {
    return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

}  // namespace spinctl
