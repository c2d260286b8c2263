#include "equiloci/cubic.hpp"

#include <algorithm>
#include <cmath>

#include "equiloci/errors.hpp"

namespace equiloci {

template <class T>
std::array<T, 3> TernaryCubic<T>::gradient(T x0, T x1, T x2) const {
    std::array<T, 3> g{T(0), T(0), T(0)};
    auto powi = [](T x, int n) {
        T r = T(1);
        for (int i = 0; i < n; ++i) r = r * x;
        return r;
    };
    for (int m = 0; m < 10; ++m) {
        const int e0 = kCubicMonomials[m][0], e1 = kCubicMonomials[m][1], e2 = kCubicMonomials[m][2];
        if (e0 > 0) g[0] += c[m] * T(double(e0)) * powi(x0, e0 - 1) * powi(x1, e1) * powi(x2, e2);
        if (e1 > 0) g[1] += c[m] * T(double(e1)) * powi(x0, e0) * powi(x1, e1 - 1) * powi(x2, e2);
        if (e2 > 0) g[2] += c[m] * T(double(e2)) * powi(x0, e0) * powi(x1, e1) * powi(x2, e2 - 1);
    }
    return g;
}

template struct TernaryCubic<double>;
template struct TernaryCubic<Complex>;

namespace {

constexpr double kNodes[13][3] = {
    {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, -1, 0},
    {1, 0, -1}, {0, 1, -1}, {1, 1, 1}, {1, -1, 1}, {1, 1, -1}, {-1, 1, 1},
};

double monomial_at(int m, double x0, double x1, double x2) {
    auto powi = [](double x, int n) {
        double r = 1;
        for (int i = 0; i < n; ++i) r *= x;
        return r;
    };
    return powi(x0, kCubicMonomials[m][0]) * powi(x1, kCubicMonomials[m][1]) *
           powi(x2, kCubicMonomials[m][2]);
}

}  // namespace

CubicC interpolate_cubic(const std::function<Complex(double, double, double)>& eval) {
    CMat a(13, 10);
    std::vector<Complex> b(13);
    for (int i = 0; i < 13; ++i) {
        for (int m = 0; m < 10; ++m) a(i, m) = monomial_at(m, kNodes[i][0], kNodes[i][1], kNodes[i][2]);
        b[i] = eval(kNodes[i][0], kNodes[i][1], kNodes[i][2]);
    }
    auto x = lstsq(a, b);
    CubicC out;
    for (int m = 0; m < 10; ++m) out.c[m] = x[m];
    return out;
}

CubicR interpolate_cubic_real(const std::function<Complex(double, double, double)>& eval,
                              double imag_tol, double* worst_imag) {
    const CubicC p = interpolate_cubic(eval);
    double worst = 0.0;
    double scale = 0.0;
    for (const auto& v : p.c) scale = std::max(scale, std::abs(v));
    for (const auto& v : p.c) worst = std::max(worst, std::abs(v.imag()));
    if (worst_imag) *worst_imag = worst;
    if (scale > 0 && worst > imag_tol * std::max(scale, 1.0))
        fail(Err::IllConditioned, "determinant form has non-real coefficients");
    CubicR out;
    for (int m = 0; m < 10; ++m) out.c[m] = p.c[m].real();
    return out;
}

CubicC substitute(const CubicC& p, const Mat3& a) {
    // evaluate-and-reinterpolate: q(x) = p(A x) is again a cubic
    CMat sys(13, 10);
    std::vector<Complex> b(13);
    for (int i = 0; i < 13; ++i) {
        for (int m = 0; m < 10; ++m)
            sys(i, m) = monomial_at(m, kNodes[i][0], kNodes[i][1], kNodes[i][2]);
        const Vec3 y = a * Vec3{kNodes[i][0], kNodes[i][1], kNodes[i][2]};
        b[i] = p.eval(y[0], y[1], y[2]);
    }
    auto x = lstsq(sys, b);
    CubicC out;
    for (int m = 0; m < 10; ++m) out.c[m] = x[m];
    return out;
}

std::array<Complex, 4> restrict_to_line(const CubicC& p, const Vec3& a, const Vec3& b) {
    // p(a + t b): sample at 4 t-values and solve the Vandermonde system
    const double ts[4] = {0.0, 1.0, -1.0, 2.0};
    CMat v(4, 4);
    std::vector<Complex> rhs(4);
    for (int i = 0; i < 4; ++i) {
        double tp = 1;
        for (int j = 0; j < 4; ++j) {
            v(i, j) = tp;
            tp *= ts[i];
        }
        const Vec3 x = a + ts[i] * b;
        rhs[i] = p.eval(x[0], x[1], x[2]);
    }
    auto sol = lstsq(v, rhs);
    return {sol[0], sol[1], sol[2], sol[3]};
}

std::vector<Complex> poly_roots(std::vector<Complex> coeffs) {
    // strip leading (high-degree) zeros relative to the largest coefficient
    double scale = 0.0;
    for (const auto& v : coeffs) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return {};
    while (coeffs.size() > 1 && std::abs(coeffs.back()) < 1e-14 * scale) coeffs.pop_back();
    const int n = int(coeffs.size()) - 1;
    if (n < 1) return {};
    std::vector<Complex> a(coeffs.begin(), coeffs.end());
    for (auto& v : a) v /= coeffs.back();

    // Durand-Kerner from staggered initial guesses
    std::vector<Complex> r(n);
    const Complex seed{0.4, 0.9};
    Complex acc = 1.0;
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        r[i] = acc;
    }
    auto eval = [&](Complex x) {
        Complex v = 0.0;
        for (int k = n; k >= 0; --k) v = v * x + a[k];
        return v;
    };
    for (int iter = 0; iter < 200; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (r[i] - r[j]);
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            const Complex delta = eval(r[i]) / denom;
            r[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return r;
}


std::vector<std::pair<Complex, int>> cubic_roots_with_multiplicity(
    const std::array<Complex, 4>& coeffs) {
    std::vector<Complex> cv(coeffs.begin(), coeffs.end());
    auto raw = poly_roots(cv);
    std::vector<std::pair<Complex, int>> out;
    std::vector<bool> used(raw.size(), false);
    const double cluster_tol = 1e-4;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> cluster{i};
        for (std::size_t j = i + 1; j < raw.size(); ++j)
            if (!used[j] && std::abs(raw[j] - raw[i]) < cluster_tol * (1.0 + std::abs(raw[i])))
                cluster.push_back(j);
        for (auto j : cluster) used[j] = true;
        Complex r = raw[i];
        const int mult = int(cluster.size());
        if (mult == 2) {
            // simple root of p' closest to the cluster
            const Complex a = 3.0 * coeffs[3], b = 2.0 * coeffs[2], c = coeffs[1];
            if (std::abs(a) > 1e-14) {
                const Complex disc = std::sqrt(b * b - 4.0 * a * c);
                const Complex r1 = (-b + disc) / (2.0 * a), r2 = (-b - disc) / (2.0 * a);
                r = std::abs(r1 - r) < std::abs(r2 - r) ? r1 : r2;
            } else if (std::abs(b) > 1e-14) {
                r = -c / b;
            }
        } else if (mult >= 3) {
            // root of p''
            if (std::abs(coeffs[3]) > 1e-14) r = -coeffs[2] / (3.0 * coeffs[3]);
        }
        out.push_back({r, mult});
    }
    return out;
}

LineDivision divide_by_line(const CubicC& p, const Vec3& lraw) {
    // move the line to {y0 = 0}: q(y) = p(M y) with l . (M y) = y0
    const Vec3 l = lraw / norm_euclid(lraw);
    std::size_t k = 0;
    double best = std::abs(l[0]);
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(l[i]) > best) {
            best = std::abs(l[i]);
            k = i;
        }
    // columns: m0 with l.m0 = 1; m1, m2 spanning the kernel of l (bilinear pairing)
    Mat3 m = Mat3::zero();
    m(k, 0) = 1.0 / l[k];
    const std::size_t i1 = (k + 1) % 3, i2 = (k + 2) % 3;
    m(i1, 1) = 1.0;
    m(k, 1) = -l[i1] / l[k];
    m(i2, 2) = 1.0;
    m(k, 2) = -l[i2] / l[k];

    const CubicC q = substitute(p, m);
    // monomials without y0: indices 6..9 (y1^3, y1^2 y2, y1 y2^2, y2^3)
    double resid = 0.0;
    for (int idx = 6; idx < 10; ++idx) resid = std::max(resid, std::abs(q.c[idx]));
    const double pn = std::max(p.coeff_norm(), 1e-300);

    LineDivision out{};
    out.residual = resid / pn;
    out.divisible = out.residual < 1e-7;
    if (out.divisible) {
        // q = y0 * (conic in y); conic coefficients in the y-chart:
        // y0^2, y0y1, y0y2, y1^2, y1y2, y2^2  <-  q's x0^3, x0^2x1, x0^2x2, x0x1^2, x0x1x2, x0x2^2
        out.quotient = {q.c[0], q.c[1], q.c[2], q.c[3], q.c[4], q.c[5]};
    }
    return out;
}


LineFactorFit best_line_factor(const CubicC& p, const Vec3& seed_line) {
    // Gauss-Newton on the division obstruction: the four pure-monomial coefficients of
    // p in a chart adapted to the line are holomorphic in the line coefficients, so the
    // iteration is quadratically convergent near a true factor.
    Vec3 l = seed_line / norm_euclid(seed_line);
    auto obstruction = [&](const Vec3& line) {
        // mirror of divide_by_line, returning the raw complex obstruction vector
        std::size_t k = 0;
        double best = std::abs(line[0]);
        for (std::size_t i = 1; i < 3; ++i)
            if (std::abs(line[i]) > best) {
                best = std::abs(line[i]);
                k = i;
            }
        Mat3 m = Mat3::zero();
        m(k, 0) = 1.0 / line[k];
        const std::size_t i1 = (k + 1) % 3, i2 = (k + 2) % 3;
        m(i1, 1) = 1.0;
        m(k, 1) = -line[i1] / line[k];
        m(i2, 2) = 1.0;
        m(k, 2) = -line[i2] / line[k];
        const CubicC q = substitute(p, m);
        return std::array<Complex, 4>{q.c[6], q.c[7], q.c[8], q.c[9]};
    };

    // gauge: hold the largest coordinate of the seed fixed, vary the other two
    std::size_t fixed = 0;
    double best = std::abs(l[0]);
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(l[i]) > best) {
            best = std::abs(l[i]);
            fixed = i;
        }
    const std::size_t v1 = (fixed + 1) % 3, v2 = (fixed + 2) % 3;

    for (int iter = 0; iter < 12; ++iter) {
        const auto r0 = obstruction(l);
        double rn = 0;
        for (const auto& v : r0) rn += std::norm(v);
        if (std::sqrt(rn) < 1e-15 * p.coeff_norm()) break;
        const Complex step{1e-7, 0.0};
        CMat jac(4, 2);
        for (int j = 0; j < 2; ++j) {
            Vec3 lp = l;
            lp[j == 0 ? v1 : v2] += step;
            const auto rp = obstruction(lp);
            for (int i = 0; i < 4; ++i) jac(i, j) = (rp[i] - r0[i]) / step;
        }
        std::vector<Complex> rhs(4);
        for (int i = 0; i < 4; ++i) rhs[i] = -r0[i];
        auto d = lstsq(jac, rhs, 1e-10);
        l[v1] += d[0];
        l[v2] += d[1];
        if (std::abs(d[0]) + std::abs(d[1]) < 1e-16) break;
    }
    l = l / norm_euclid(l);
    const LineDivision div = divide_by_line(p, l);
    LineFactorFit out;
    out.residual = div.residual;
    out.line = l;
    out.conic = div.quotient;
    return out;
}

const char* cubic_type_name(CubicType t) {
    switch (t) {
        case CubicType::Smooth: return "Smooth";
        case CubicType::Nodal: return "Nodal";
        case CubicType::Cuspidal: return "Cuspidal";
        case CubicType::ConicPlusChord: return "ConicPlusChord";
        case CubicType::ConicPlusTangent: return "ConicPlusTangent";
        case CubicType::ThreeLinesGeneral: return "ThreeLinesGeneral";
        case CubicType::ThreeLinesConcurrent: return "ThreeLinesConcurrent";
        case CubicType::DoubleLinePlusLine: return "DoubleLinePlusLine";
        case CubicType::TripleLine: return "TripleLine";
        case CubicType::IdenticallyZero: return "IdenticallyZero";
    }
    return "?";
}

namespace {

// Hessian of the cubic at x (3x3 complex symmetric; entries are linear in x).
Mat3 hessian_at(const CubicC& p, const Vec3& x) {
    Mat3 h;
    // second partials via finite structure: d2/dxi dxj of each monomial
    for (int m = 0; m < 10; ++m) {
        const int e[3] = {kCubicMonomials[m][0], kCubicMonomials[m][1], kCubicMonomials[m][2]};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int f[3] = {e[0], e[1], e[2]};
                double coef = 1.0;
                coef *= f[i];
                if (f[i] == 0) continue;
                f[i] -= 1;
                coef *= f[j];
                if (coef == 0.0) continue;
                f[j] -= 1;
                Complex mono = 1.0;
                const Complex xs[3] = {x[0], x[1], x[2]};
                for (int k = 0; k < 3; ++k)
                    for (int t = 0; t < f[k]; ++t) mono *= xs[k];
                h(i, j) += p.c[m] * coef * mono;
            }
    }
    return h;
}

int hessian_rank(const Mat3& h, double scale) {
    CMat a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = h(i, j);
    Svd<Complex> s = svd_jacobi(a);
    int rank = 0;
    for (int j = 0; j < 3; ++j)
        if (s.sigma[j] > 1e-5 * std::max(scale, s.sigma[0])) ++rank;
    return rank;
}

// Gauss-Newton polish of the full gradient system in the chart at s. Degenerate
// singularities (cusps, tangencies) leave a rank-1 Jacobian, so convergence is only
// linear there; the iteration budget accounts for that.
Vec3 polish_singular(const CubicC& p, Vec3 s) {
    for (int iter = 0; iter < 60; ++iter) {
        s = s / norm_euclid(s);
        // Euclidean-orthonormal chart directions
        Vec3 e1{};
        std::size_t k = 0;
        double best = std::abs(s[0]);
        for (std::size_t i = 1; i < 3; ++i)
            if (std::abs(s[i]) > best) {
                best = std::abs(s[i]);
                k = i;
            }
        Vec3 cand{};
        cand[(k + 1) % 3] = 1.0;
        e1 = cand - s * dot_euclid(cand, s);
        e1 = e1 / norm_euclid(e1);
        Vec3 e2 = cross_bilinear(equiloci::conj(s), equiloci::conj(e1));
        e2 = e2 / norm_euclid(e2);

        const auto g = p.gradient(s[0], s[1], s[2]);
        const Mat3 hess = hessian_at(p, s);
        CMat jac(3, 2);
        const Vec3 he1 = hess * e1, he2 = hess * e2;
        std::vector<Complex> rhs(3);
        for (int i = 0; i < 3; ++i) {
            jac(i, 0) = he1[i];
            jac(i, 1) = he2[i];
            rhs[i] = -g[i];
        }
        auto d = lstsq(jac, rhs, 1e-10);
        s = s + d[0] * e1 + d[1] * e2;
        if (std::abs(d[0]) + std::abs(d[1]) < 1e-15) break;
    }
    return s / norm_euclid(s);
}

struct QuadInX2 {
    // conic as a quadratic in x2 with coefficients depending on (x0, x1):
    // A x2^2 + B(x0,x1) x2 + C(x0,x1), B linear, C quadratic
    Complex a;
    Complex b0, b1;
    Complex c00, c01, c11;
    Complex at(Complex x0, Complex x1, Complex x2) const {
        return a * x2 * x2 + (b0 * x0 + b1 * x1) * x2 + c00 * x0 * x0 + c01 * x0 * x1 + c11 * x1 * x1;
    }
};

QuadInX2 conic_in_x2(const std::array<Complex, 6>& q) {
    // input order: x0^2, x0x1, x0x2, x1^2, x1x2, x2^2
    QuadInX2 out;
    out.a = q[5];
    out.b0 = q[2];
    out.b1 = q[4];
    out.c00 = q[0];
    out.c01 = q[1];
    out.c11 = q[3];
    return out;
}

// gradient conic d p / d x_i packed as x0^2, x0x1, x0x2, x1^2, x1x2, x2^2
std::array<Complex, 6> partial_conic(const CubicC& p, int var) {
    std::array<Complex, 6> q{};
    auto add = [&](int e0, int e1, int e2, Complex v) {
        if (e0 == 2) q[0] += v;
        else if (e0 == 1 && e1 == 1) q[1] += v;
        else if (e0 == 1 && e2 == 1) q[2] += v;
        else if (e1 == 2) q[3] += v;
        else if (e1 == 1 && e2 == 1) q[4] += v;
        else q[5] += v;
    };
    for (int m = 0; m < 10; ++m) {
        int e[3] = {kCubicMonomials[m][0], kCubicMonomials[m][1], kCubicMonomials[m][2]};
        if (e[var] == 0) continue;
        const Complex v = p.c[m] * double(e[var]);
        e[var] -= 1;
        add(e[0], e[1], e[2], v);
    }
    return q;
}

// Resultant in x2 of two conics: homogeneous quartic in (x0, x1), 5 coefficients.
std::array<Complex, 5> resultant_x2(const QuadInX2& f, const QuadInX2& g) {
    // evaluate the 4x4 Sylvester determinant at 5 (x0:x1) chart values and interpolate
    const double ts[5] = {0.0, 1.0, -1.0, 2.0, -2.0};
    std::array<Complex, 5> vals{};
    for (int i = 0; i < 5; ++i) {
        const Complex x0 = 1.0, x1 = ts[i];
        const Complex fb = f.b0 * x0 + f.b1 * x1;
        const Complex fc = f.c00 * x0 * x0 + f.c01 * x0 * x1 + f.c11 * x1 * x1;
        const Complex gb = g.b0 * x0 + g.b1 * x1;
        const Complex gc = g.c00 * x0 * x0 + g.c01 * x0 * x1 + g.c11 * x1 * x1;
        // Sylvester matrix of (f.a x^2 + fb x + fc) and (g.a x^2 + gb x + gc)
        const Complex m[4][4] = {
            {f.a, fb, fc, 0.0},
            {0.0, f.a, fb, fc},
            {g.a, gb, gc, 0.0},
            {0.0, g.a, gb, gc},
        };
        // direct 4x4 determinant by expansion
        auto det3 = [](Complex a00, Complex a01, Complex a02, Complex a10, Complex a11,
                       Complex a12, Complex a20, Complex a21, Complex a22) {
            return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
                   a02 * (a10 * a21 - a11 * a20);
        };
        Complex d = 0.0;
        d += m[0][0] * det3(m[1][1], m[1][2], m[1][3], m[2][1], m[2][2], m[2][3], m[3][1], m[3][2], m[3][3]);
        d -= m[0][1] * det3(m[1][0], m[1][2], m[1][3], m[2][0], m[2][2], m[2][3], m[3][0], m[3][2], m[3][3]);
        d += m[0][2] * det3(m[1][0], m[1][1], m[1][3], m[2][0], m[2][1], m[2][3], m[3][0], m[3][1], m[3][3]);
        d -= m[0][3] * det3(m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2], m[3][0], m[3][1], m[3][2]);
        vals[i] = d;
    }
    // interpolate quartic coefficients in t = x1/x0 (samples are p(1, t))
    CMat v(5, 5);
    std::vector<Complex> rhs(5);
    for (int i = 0; i < 5; ++i) {
        double tp = 1;
        for (int j = 0; j < 5; ++j) {
            v(i, j) = tp;
            tp *= ts[i];
        }
        rhs[i] = vals[i];
    }
    auto sol = lstsq(v, rhs);
    return {sol[0], sol[1], sol[2], sol[3], sol[4]};
}

// deterministic generic rotations; a spurious resultant degeneration is chart-specific,
// so a few fixed alternatives distinguish it from a genuine multiple component
Mat3 generic_rotation(int which) {
    Mat3 u;
    if (which == 0) {
        u(0, 0) = Complex(0.36, 0.12);  u(0, 1) = Complex(-0.48, 0.31); u(0, 2) = Complex(0.22, -0.57);
        u(1, 0) = Complex(0.54, -0.27); u(1, 1) = Complex(0.61, 0.08);  u(1, 2) = Complex(-0.11, 0.35);
        u(2, 0) = Complex(-0.19, 0.44); u(2, 1) = Complex(0.05, -0.52); u(2, 2) = Complex(0.63, 0.23);
    } else if (which == 1) {
        u(0, 0) = Complex(0.58, -0.21); u(0, 1) = Complex(0.14, 0.42);  u(0, 2) = Complex(-0.33, 0.26);
        u(1, 0) = Complex(-0.12, 0.47); u(1, 1) = Complex(0.66, -0.09); u(1, 2) = Complex(0.25, 0.31);
        u(2, 0) = Complex(0.29, 0.18);  u(2, 1) = Complex(-0.23, 0.39); u(2, 2) = Complex(0.55, -0.14);
    } else {
        u(0, 0) = Complex(0.41, 0.33);  u(0, 1) = Complex(0.52, -0.17); u(0, 2) = Complex(-0.21, 0.44);
        u(1, 0) = Complex(-0.36, 0.25); u(1, 1) = Complex(0.19, 0.58);  u(1, 2) = Complex(0.47, 0.12);
        u(2, 0) = Complex(0.31, -0.42); u(2, 1) = Complex(-0.15, 0.27); u(2, 2) = Complex(0.62, 0.2);
    }
    return u;
}

}  // namespace

CubicAnalysis classify_cubic(const CubicC& praw) {
    CubicAnalysis out{};
    const double pn = praw.coeff_norm();
    if (pn < 1e-12) {
        out.type = CubicType::IdenticallyZero;
        return out;
    }

    // work in deterministically rotated coordinates, map singular points back at the end
    Mat3 rot = generic_rotation(0);
    CubicC p = substitute(praw.normalized(), rot);
    double scale = std::max(p.coeff_norm(), 1e-300);
    std::array<Complex, 5> res{};
    double res_norm = 0.0;
    for (int which = 0; which < 3; ++which) {
        rot = generic_rotation(which);
        p = substitute(praw.normalized(), rot);
        scale = std::max(p.coeff_norm(), 1e-300);
        res = resultant_x2(conic_in_x2(partial_conic(p, 0)), conic_in_x2(partial_conic(p, 1)));
        res_norm = 0.0;
        for (const auto& v : res) res_norm = std::max(res_norm, std::abs(v));
        if (res_norm >= 1e-9 * scale * scale) break;
    }
    auto map_back = [&](const Vec3& y) {
        const Vec3 x = rot * y;
        return x / norm_euclid(x);
    };
    const auto q0 = partial_conic(p, 0);
    const auto q1 = partial_conic(p, 1);

    if (res_norm < 1e-9 * scale * scale) {
        // the gradient conics share a component: p has a multiple linear factor;
        // find the singular line from two singular points on random probe lines
        out.multiple_component = true;
        std::vector<Vec3> line_pts;
        const Vec3 probes[4][2] = {
            {{1, 0.3, -0.2}, {0.1, 1, 0.4}},
            {{0.7, -0.5, 1}, {1, 0.2, 0.3}},
            {{-0.4, 1, 0.6}, {0.9, 0.1, -1}},
            {{0.2, -0.8, 0.5}, {-0.6, 0.4, 1}},
        };
        for (const auto& pr : probes) {
            // the multiple line crosses each probe line in a multiplicity >= 2 root
            const auto coeffs = restrict_to_line(p, pr[0], pr[1]);
            for (const auto& [root, mult] : cubic_roots_with_multiplicity(coeffs)) {
                if (mult < 2) continue;
                const Vec3 xt = pr[0] + root * pr[1];
                const auto g = p.gradient(xt[0], xt[1], xt[2]);
                double gn = 0;
                for (const auto& v : g) gn += std::norm(v);
                if (std::sqrt(gn) < 1e-7 * scale * norm2_euclid(xt))
                    line_pts.push_back(xt / norm_euclid(xt));
            }
            if (line_pts.size() >= 2) break;
        }
        if (line_pts.size() < 2) fail(Err::IllConditioned, "singular line not located");
        // the multiple line l: vanishes on both points
        // triple line iff the Hessian vanishes along the singular line
        bool triple = true;
        for (double t : {-1.0, 0.2, 0.7, 1.4}) {
            const Vec3 x = line_pts[0] + t * (line_pts[1] - line_pts[0]);
            const Mat3 hh = hessian_at(p, x);
            if (frobenius_norm(hh) > 1e-6 * scale * norm_euclid(x)) triple = false;
        }
        out.type = triple ? CubicType::TripleLine : CubicType::DoubleLinePlusLine;
        out.singular_points.push_back(
            {map_back(line_pts[0]), triple ? 0 : 1, 0.0});
        out.singular_points.push_back(
            {map_back(line_pts[1]), triple ? 0 : 1, 0.0});
        return out;
    }

    // isolated candidates: quartic roots in (x0 : x1), then x2 from the conic pair
    std::vector<Vec3> candidates;
    {
        std::vector<Complex> coeffs(res.begin(), res.end());
        auto roots = poly_roots(coeffs);
        std::vector<std::pair<Complex, Complex>> dirs;  // (x0, x1)
        for (const auto& r : roots) dirs.push_back({1.0, r});
        // roots at infinity of the t-chart (leading coefficient ~ 0)
        if (std::abs(res[4]) < 1e-9 * res_norm) dirs.push_back({0.0, 1.0});
        for (const auto& [x0, x1] : dirs) {
            const QuadInX2 f = conic_in_x2(q0);
            // solve f(x0,x1,x2) = 0 for x2 (fall back to the other conic if degenerate)
            for (const QuadInX2& qq : {f, conic_in_x2(q1)}) {
                const Complex A = qq.a;
                const Complex B = qq.b0 * x0 + qq.b1 * x1;
                const Complex C =
                    qq.c00 * x0 * x0 + qq.c01 * x0 * x1 + qq.c11 * x1 * x1;
                if (std::abs(A) > 1e-10) {
                    const Complex disc = std::sqrt(B * B - 4.0 * A * C);
                    candidates.push_back(Vec3{x0, x1, (-B + disc) / (2.0 * A)});
                    candidates.push_back(Vec3{x0, x1, (-B - disc) / (2.0 * A)});
                } else if (std::abs(B) > 1e-10) {
                    candidates.push_back(Vec3{x0, x1, -C / B});
                } else {
                    candidates.push_back(Vec3{x0, x1, 1.0});  // conic independent of x2 here
                }
            }
        }
    }

    // polish against the full gradient system, filter, dedupe
    std::vector<SingularPoint> sings;
    for (auto cand : candidates) {
        if (norm_euclid(cand) < 1e-12) continue;
        Vec3 s = polish_singular(p, cand / norm_euclid(cand));
        const auto g = p.gradient(s[0], s[1], s[2]);
        double gn = 0;
        for (const auto& v : g) gn += std::norm(v);
        gn = std::sqrt(gn);
        if (gn > 1e-7 * scale) continue;
        bool dup = false;
        for (const auto& prev : sings) {
            const double ip = std::abs(dot_euclid(prev.point, s));
            if (ip > 1.0 - 5e-7) dup = true;  // merge below ~1e-3 projective distance
        }
        if (dup) continue;
        const Mat3 hh = hessian_at(p, s);
        sings.push_back({s, hessian_rank(hh, scale), gn});
    }

    // classification by count and local type
    if (sings.empty()) {
        out.type = CubicType::Smooth;
    } else if (sings.size() == 1) {
        const auto& s = sings[0];
        if (s.hessian_rank == 0) {
            out.type = CubicType::ThreeLinesConcurrent;
        } else if (s.hessian_rank == 2) {
            out.type = CubicType::Nodal;
        } else {
            // rank 1: cuspidal iff the double tangent line is not a component
            const Mat3 hh = hessian_at(p, s.point);
            Vec3 probe{0.41, -0.73, 0.56};
            Vec3 a = hh * probe;
            if (norm_euclid(a) < 1e-8) {
                probe = Vec3{0.9, 0.2, -0.5};
                a = hh * probe;
            }
            // line form a^T x = 0 through the singular point (bilinear coefficients),
            // refined globally: the Hessian tangent is only as accurate as the point
            const LineFactorFit fit = best_line_factor(p, a);
            out.type = fit.residual < 1e-9 ? CubicType::ConicPlusTangent : CubicType::Cuspidal;
        }
    } else if (sings.size() == 2) {
        out.type = CubicType::ConicPlusChord;
    } else {
        out.type = CubicType::ThreeLinesGeneral;
    }

    for (auto& s : sings) s.point = map_back(s.point);
    out.singular_points = std::move(sings);
    return out;
}

}  // namespace equiloci
