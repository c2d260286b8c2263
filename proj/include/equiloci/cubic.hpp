#pragma once

#include <array>
#include <functional>
#include <vector>

#include "equiloci/complex3.hpp"
#include "equiloci/numeric.hpp"

namespace equiloci {

// Monomial order used for every ternary cubic in the project:
// x0^3, x0^2 x1, x0^2 x2, x0 x1^2, x0 x1 x2, x0 x2^2, x1^3, x1^2 x2, x1 x2^2, x2^3
inline constexpr int kCubicMonomials[10][3] = {
    {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
    {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3},
};

template <class T>
struct TernaryCubic {
    std::array<T, 10> c{};

    T eval(T x0, T x1, T x2) const {
        auto powi = [](T x, int n) {
            T r = T(1);
            for (int i = 0; i < n; ++i) r = r * x;
            return r;
        };
        T acc = T(0);
        for (int m = 0; m < 10; ++m)
            acc += c[m] * powi(x0, kCubicMonomials[m][0]) * powi(x1, kCubicMonomials[m][1]) *
                   powi(x2, kCubicMonomials[m][2]);
        return acc;
    }

    std::array<T, 3> gradient(T x0, T x1, T x2) const;

    double coeff_norm() const {
        double s = 0;
        for (const auto& v : c) s += detail::abs2_of(v);
        return std::sqrt(s);
    }

    TernaryCubic<T> normalized() const {
        TernaryCubic<T> out = *this;
        const double n = coeff_norm();
        if (n > 0)
            for (auto& v : out.c) v = v * (1.0 / n);
        return out;
    }
};

using CubicR = TernaryCubic<double>;
using CubicC = TernaryCubic<Complex>;

inline CubicC complexify(const CubicR& p) {
    CubicC out;
    for (int m = 0; m < 10; ++m) out.c[m] = p.c[m];
    return out;
}

/// Coefficients by sampling at a fixed integer node set (least squares on 13 nodes).
CubicC interpolate_cubic(const std::function<Complex(double, double, double)>& eval);

/// Same, asserting the imaginary parts are below `imag_tol` and truncating them.
CubicR interpolate_cubic_real(const std::function<Complex(double, double, double)>& eval,
                              double imag_tol, double* worst_imag = nullptr);

/// q(x) = p(A x) for a linear substitution A (columns = images of basis covectors).
CubicC substitute(const CubicC& p, const Mat3& a);

/// Coefficients (t^0..t^3) of the restriction p(a + t b).
std::array<Complex, 4> restrict_to_line(const CubicC& p, const Vec3& a, const Vec3& b);

/// All complex roots of c[0] + c[1] t + ... + c[n] t^n (Durand-Kerner, n <= 8).
std::vector<Complex> poly_roots(std::vector<Complex> coeffs);

/// Roots of a cubic with multiplicities; clustered roots are re-extracted from the
/// derivative (multiplicity 2) or second derivative (multiplicity 3), which restores
/// machine accuracy on multiple components.
std::vector<std::pair<Complex, int>> cubic_roots_with_multiplicity(
    const std::array<Complex, 4>& coeffs);

struct LineDivision {
    bool divisible;
    double residual;              // size of the obstruction, relative to ||p||
    std::array<Complex, 6> quotient;  // conic x0^2,x0x1,x0x2,x1^2,x1x2,x2^2 (if divisible)
};

/// Tests whether the linear form <l, x> (bilinear pairing l0 x0 + l1 x1 + l2 x2)
/// divides p, and returns the quotient conic when it does.
LineDivision divide_by_line(const CubicC& p, const Vec3& l);

struct LineFactorFit {
    double residual;  // ||p - l*Q|| / ||p|| at the optimum
    Vec3 line;
    std::array<Complex, 6> conic;  // x0^2, x0x1, x0x2, x1^2, x1x2, x2^2
};

/// Refines a candidate linear factor by alternating least squares over (line, conic).
/// A true component converges to machine precision; otherwise the residual stays O(1).
LineFactorFit best_line_factor(const CubicC& p, const Vec3& seed_line);

enum class CubicType {
    Smooth,
    Nodal,
    Cuspidal,
    ConicPlusChord,
    ConicPlusTangent,
    ThreeLinesGeneral,
    ThreeLinesConcurrent,
    DoubleLinePlusLine,
    TripleLine,
    IdenticallyZero,
};

const char* cubic_type_name(CubicType t);

struct SingularPoint {
    Vec3 point;          // unit representative
    int hessian_rank;    // 2 = node, 1 = cusp/tangency, 0 = ordinary triple point
    double grad_residual;
};

struct CubicAnalysis {
    CubicType type;
    std::vector<SingularPoint> singular_points;
    bool multiple_component;  // singular along a whole line
};

/// Full plane-cubic classification over C: singular points by resultant elimination
/// with Newton polish, local type from the Hessian rank, component structure from
/// divisibility tests.
CubicAnalysis classify_cubic(const CubicC& p);

inline CubicAnalysis classify_cubic(const CubicR& p) { return classify_cubic(complexify(p)); }

}  // namespace equiloci
