#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace equiloci {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

/// Column vector in the ambient space V = C^3.
struct Vec3 {
    std::array<Complex, 3> c{};

    Vec3() = default;
    Vec3(Complex a, Complex b, Complex d) : c{a, b, d} {}

    Complex& operator[](std::size_t i) { return c[i]; }
    const Complex& operator[](std::size_t i) const { return c[i]; }

    Vec3 operator+(const Vec3& o) const { return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]}; }
    Vec3 operator-(const Vec3& o) const { return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2]}; }
    Vec3 operator-() const { return {-c[0], -c[1], -c[2]}; }
    Vec3 operator*(Complex s) const { return {c[0] * s, c[1] * s, c[2] * s}; }
    Vec3 operator/(Complex s) const { return {c[0] / s, c[1] / s, c[2] / s}; }
};

inline Vec3 operator*(Complex s, const Vec3& v) { return v * s; }

/// Plain Euclidean dot product, conjugate-linear in the second slot: sum u_k conj(v_k).
inline Complex dot_euclid(const Vec3& u, const Vec3& v) {
    return u[0] * std::conj(v[0]) + u[1] * std::conj(v[1]) + u[2] * std::conj(v[2]);
}

inline double norm2_euclid(const Vec3& v) { return std::real(dot_euclid(v, v)); }
inline double norm_euclid(const Vec3& v) { return std::sqrt(norm2_euclid(v)); }

/// Bilinear cross product (no conjugation): dot(a, cross(a,b)) = 0 as a bilinear identity.
inline Vec3 cross_bilinear(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Vec3 conj(const Vec3& v) { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }

/// 3x3 complex matrix, row-major.
struct Mat3 {
    std::array<Complex, 9> a{};

    Complex& operator()(std::size_t i, std::size_t j) { return a[3 * i + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a[3 * i + j]; }

    static Mat3 zero() { return {}; }
    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }
    static Mat3 diag(Complex a0, Complex a1, Complex a2) {
        Mat3 m;
        m(0, 0) = a0;
        m(1, 1) = a1;
        m(2, 2) = a2;
        return m;
    }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }
    Mat3 operator-() const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.a[i] = -a[i];
        return r;
    }
    Mat3 operator*(Complex s) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.a[i] = a[i] * s;
        return r;
    }
};

inline Mat3 operator*(Complex s, const Mat3& m) { return m * s; }

inline Vec3 operator*(const Mat3& m, const Vec3& v) {
    Vec3 r;
    for (std::size_t i = 0; i < 3; ++i)
        r[i] = m(i, 0) * v[0] + m(i, 1) * v[1] + m(i, 2) * v[2];
    return r;
}

inline Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
    return r;
}

/// Conjugate transpose.
inline Mat3 ctranspose(const Mat3& m) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r(i, j) = std::conj(m(j, i));
    return r;
}

inline Complex trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

inline Complex det(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Adjugate: m * adjugate(m) = det(m) * I.
inline Mat3 adjugate(const Mat3& m) {
    Mat3 r;
    r(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    r(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    r(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    r(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    r(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    r(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    r(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    r(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    r(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return r;
}

inline Mat3 inverse(const Mat3& m) { return adjugate(m) * (1.0 / det(m)); }

/// Rank-one map u * v^H (outer product, no form involved).
inline Mat3 outer(const Vec3& u, const Vec3& v) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r(i, j) = u[i] * std::conj(v[j]);
    return r;
}

inline double frobenius_norm(const Mat3& m) {
    double s = 0.0;
    for (const auto& z : m.a) s += std::norm(z);
    return std::sqrt(s);
}

inline Vec3 col(const Mat3& m, std::size_t j) { return {m(0, j), m(1, j), m(2, j)}; }

}  // namespace equiloci
