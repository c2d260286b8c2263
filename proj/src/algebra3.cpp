#include "equiloci/algebra3.hpp"

#include <algorithm>
#include <cmath>

namespace equiloci {

Algebra3 Algebra3::from_phi(const std::array<std::array<std::array<Complex, 3>, 3>, 3>& phi) {
    // Phi(x)[k][j] = sum_i c[i][j][k] x_i
    Tensor c{};
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) c[i][j][k] = phi[k][j][i];
    return Algebra3(c);
}

Vec3 Algebra3::product(const Vec3& x, const Vec3& y) const {
    Vec3 out{};
    for (int k = 0; k < 3; ++k) {
        Complex acc = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc += c_[i][j][k] * x[i] * y[j];
        out[k] = acc;
    }
    return out;
}

Mat3 Algebra3::left_mult(const Vec3& x) const {
    Mat3 m;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) {
            Complex acc = 0;
            for (int i = 0; i < 3; ++i) acc += c_[i][j][k] * x[i];
            m(k, j) = acc;
        }
    return m;
}

Mat3 Algebra3::right_mult(const Vec3& y) const {
    Mat3 m;
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i) {
            Complex acc = 0;
            for (int j = 0; j < 3; ++j) acc += c_[i][j][k] * y[j];
            m(k, i) = acc;
        }
    return m;
}

Algebra3 Algebra3::transformed(const Mat3& g1, const Mat3& g2, const Mat3& g3) const {
    const Mat3 g1i = inverse(g1), g2i = inverse(g2);
    Tensor out{};
    // b'(e_i, e_j) = g3 b(g1^-1 e_i, g2^-1 e_j)
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Vec3 u = col(g1i, i), v = col(g2i, j);
            const Vec3 w = g3 * product(u, v);
            for (int k = 0; k < 3; ++k) out[i][j][k] = w[k];
        }
    return Algebra3(out);
}

double Algebra3::tensor_norm() const {
    double s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) s += std::norm(c_[i][j][k]);
    return std::sqrt(s);
}

Algebra3 sl2_algebra() {
    // basis e, f, h of trace-zero 2x2 matrices with the commutator product
    Algebra3::Tensor c{};
    c[0][1][2] = 1;   // [e,f] = h
    c[1][0][2] = -1;
    c[2][0][0] = 2;   // [h,e] = 2e
    c[0][2][0] = -2;
    c[2][1][1] = -2;  // [h,f] = -2f
    c[1][2][1] = 2;
    return Algebra3(c);
}

namespace {

std::array<std::array<std::array<Complex, 3>, 3>, 3> phi_rows(
    std::initializer_list<std::initializer_list<std::array<Complex, 3>>> rows) {
    std::array<std::array<std::array<Complex, 3>, 3>, 3> out{};
    int k = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (const auto& entry : row) {
            out[k][j] = entry;
            ++j;
        }
        ++k;
    }
    return out;
}

using F = std::array<Complex, 3>;  // linear form coefficients (x0, x1, x2)

}  // namespace

Algebra3 triple_line_algebra() {
    return Algebra3::from_phi(phi_rows({
        {F{1, 0, 0}, F{0, 0, 1}, F{0, -1, 0}},
        {F{0, 1, 0}, F{1, 0, 0}, F{0, 0, 0}},
        {F{0, 0, 1}, F{0, 0, 0}, F{1, 0, 0}},
    }));
}

Algebra3 double_line_algebra() {
    return Algebra3::from_phi(phi_rows({
        {F{0, 1, 0}, F{0, 0, 1}, F{0, -1, 0}},
        {F{0, -1, 0}, F{1, 0, 0}, F{0, 0, 0}},
        {F{0, 0, -1}, F{0, 0, 0}, F{1, 0, 0}},
    }));
}

Algebra3 double_line_sign_variant() {
    return Algebra3::from_phi(phi_rows({
        {F{0, 1, 0}, F{0, 0, 1}, F{0, -1, 0}},
        {F{0, 1, 0}, F{1, 0, 0}, F{0, 0, 0}},
        {F{0, 0, -1}, F{0, 0, 0}, F{1, 0, 0}},
    }));
}

Algebra3 ufamily_algebra(double u) {
    return Algebra3::from_phi(phi_rows({
        {F{1, 0, 0}, F{0, 0, 0}, F{0, 0, 0}},
        {F{0, 0, -u}, F{1, 0, 0}, F{0, u, 0}},
        {F{0, -1.0 / u, 0}, F{0, 0, 1.0 / u}, F{1, 0, 0}},
    }));
}

namespace {

DetCubic det_cubic_of(const std::function<Mat3(const Vec3&)>& mult, double scale) {
    DetCubic out{};
    out.p = interpolate_cubic([&](double x0, double x1, double x2) {
        return det(mult(Vec3{x0, x1, x2}));
    });
    const double s3 = std::max(scale * scale * scale, 1e-300);
    out.identically_zero = out.p.coeff_norm() < 1e-10 * s3;
    if (out.identically_zero) {
        out.p = CubicC{};
        return out;
    }
    bool all_integral = true;
    for (const auto& z : out.p.c) {
        if (std::abs(z.real() - std::round(z.real())) > 1e-9 ||
            std::abs(z.imag() - std::round(z.imag())) > 1e-9)
            all_integral = false;
    }
    if (all_integral) {
        out.snapped = true;
        for (auto& z : out.p.c) z = Complex(std::round(z.real()), std::round(z.imag()));
    }
    return out;
}

std::vector<DivisorSample> divisor_samples(const Algebra3& a, bool left, int n,
                                           std::uint64_t seed) {
    const auto mult = [&](const Vec3& x) { return left ? a.left_mult(x) : a.right_mult(x); };
    const DetCubic dc = det_cubic_of(mult, a.tensor_norm());
    std::vector<DivisorSample> out;
    if (dc.identically_zero) {
        // the whole plane consists of divisors; report a fixed grid
        Rng rng(0x9181D ^ seed);
        while (int(out.size()) < n) {
            const Vec3 d = rng.gaussian_vec3();
            const RankKernel rk = rank_kernel(mult(d), 1e-8);
            out.push_back({ProjectivePoint::from(d), rk.rank});
        }
        return out;
    }
    Rng rng(0xD1715 ^ seed);
    int guard = 0;
    while (int(out.size()) < n && guard++ < 50 * n) {
        const Vec3 u = rng.gaussian_vec3(), v = rng.gaussian_vec3();
        const auto coeffs = restrict_to_line(dc.p, u, v);
        for (const auto& [root, rmult] : cubic_roots_with_multiplicity(coeffs)) {
            (void)rmult;
            Vec3 d = u + root * v;
            const double dn = norm_euclid(d);
            if (dn < 1e-10) continue;
            d = d / dn;
            const RankKernel rk = rank_kernel(mult(d), 1e-8);
            out.push_back({ProjectivePoint::from(d), rk.rank});
            if (int(out.size()) >= n) break;
        }
    }
    if (int(out.size()) < n) fail(Err::IllConditioned, "could not sample the divisor scheme");
    return out;
}

}  // namespace

DetCubic det_cubic(const Algebra3& a) {
    return det_cubic_of([&](const Vec3& x) { return a.left_mult(x); }, a.tensor_norm());
}

DetCubic det_cubic_right(const Algebra3& a) {
    return det_cubic_of([&](const Vec3& y) { return a.right_mult(y); }, a.tensor_norm());
}

std::vector<DivisorSample> left_zero_divisors(const Algebra3& a, int n, std::uint64_t seed) {
    return divisor_samples(a, true, n, seed);
}

std::vector<DivisorSample> right_zero_divisors(const Algebra3& a, int n, std::uint64_t seed) {
    return divisor_samples(a, false, n, seed);
}

GenericityReport is_generic(const Algebra3& a, int n, std::uint64_t seed) {
    GenericityReport out{true, {}};
    for (const auto& s : left_zero_divisors(a, n, seed))
        if (s.mult_rank <= 1) {
            out.generic = false;
            out.offending.push_back(s);
        }
    for (const auto& s : right_zero_divisors(a, n, seed ^ 0x517))
        if (s.mult_rank <= 1) {
            out.generic = false;
            out.offending.push_back(s);
        }
    return out;
}

ProjectivePoint phi_of(const Algebra3& a, const ProjectivePoint& d1) {
    const Mat3 m = a.left_mult(d1.rep());
    const RankKernel rk = rank_kernel(m, 1e-8);
    if (rk.rank == 3) fail(Err::NotAZeroDivisor, "left multiplication is invertible here");
    if (rk.rank <= 1) fail(Err::RankDeficient, "left multiplication has rank <= 1 (not generic)");
    const Vec3 d2 = rk.kernel.front();
    if (norm_euclid(m * d2) > 1e-9 * std::max(frobenius_norm(m), 1e-300))
        fail(Err::IllConditioned, "kernel residual out of tolerance");
    return ProjectivePoint::from(d2);
}

ProjectivityReport phi_projectivity_test(const Algebra3& a, int n, std::uint64_t seed) {
    if (n < 8) fail(Err::InsufficientSamples, "projectivity fit needs at least 8 divisor pairs");
    std::vector<std::pair<Vec3, Vec3>> pairs;
    for (const auto& s : left_zero_divisors(a, 2 * n, seed)) {
        if (s.mult_rank != 2) continue;
        pairs.push_back({s.d.rep(), phi_of(a, s.d).rep()});
        if (int(pairs.size()) >= n) break;
    }
    if (int(pairs.size()) < n) fail(Err::InsufficientSamples, "not enough rank-2 divisors");

    // least squares for M with (I - P_phi) M d = 0 across the samples
    CMat sys(3 * pairs.size(), 9);
    for (std::size_t s = 0; s < pairs.size(); ++s) {
        const Vec3& d = pairs[s].first;
        const Vec3& f = pairs[s].second;
        for (int i = 0; i < 3; ++i)
            for (int l = 0; l < 3; ++l) {
                const Complex proj = (i == l ? 1.0 : 0.0) - f[i] * std::conj(f[l]);
                for (int j = 0; j < 3; ++j) sys(3 * s + i, 3 * l + j) += proj * d[j];
            }
    }
    Svd<Complex> sv = svd_any(sys);
    ProjectivityReport out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.best_map(i, j) = sv.v(3 * i + j, 8);
    out.samples = int(pairs.size());
    out.max_residual = 0;
    for (const auto& [d, f] : pairs) {
        const Vec3 md = out.best_map * d;
        const double mn = norm_euclid(md);
        if (mn < 1e-12) {
            out.max_residual = 1.0;
            continue;
        }
        const Vec3 rej = md - f * dot_euclid(md, f);  // f is unit
        out.max_residual = std::max(out.max_residual, norm_euclid(rej) / mn);
    }
    out.projective = out.max_residual <= 1e-6;
    return out;
}

MultiplicationKernel multiplication_kernel(const Algebra3& a) {
    CMat mu(3, 9);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) mu(k, 3 * i + j) = a.tensor()[i][j][k];
    auto null = nullspace(mu, 1e-9);
    MultiplicationKernel out;
    out.dimension = null.size();
    for (const auto& v : null) {
        std::array<Complex, 9> b{};
        for (int t = 0; t < 9; ++t) b[t] = v[t];
        out.basis.push_back(b);
    }
    return out;
}

GraphSpan graph_span_check(const Algebra3& a, int n, std::uint64_t seed) {
    std::vector<std::array<Complex, 9>> vecs;
    for (const auto& s : left_zero_divisors(a, 2 * n, seed)) {
        if (s.mult_rank != 2) continue;
        const Vec3 d = s.d.rep();
        const Vec3 f = phi_of(a, s.d).rep();
        std::array<Complex, 9> v{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) v[3 * i + j] = d[i] * f[j];
        vecs.push_back(v);
        if (int(vecs.size()) >= n) break;
    }
    GraphSpan out{};
    out.samples = int(vecs.size());
    CMat m(vecs.size(), 9);
    for (std::size_t r = 0; r < vecs.size(); ++r)
        for (int t = 0; t < 9; ++t) m(r, t) = vecs[r][t];
    out.rank = numeric_rank(m, 1e-7);
    out.max_kernel_defect = 0;
    for (const auto& v : vecs) {
        Vec3 x{}, y{};  // mu(v) computed directly from the tensor
        Vec3 mu{};
        for (int k = 0; k < 3; ++k) {
            Complex acc = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) acc += a.tensor()[i][j][k] * v[3 * i + j];
            mu[k] = acc;
        }
        (void)x;
        (void)y;
        out.max_kernel_defect = std::max(out.max_kernel_defect, norm_euclid(mu));
    }
    return out;
}

NormalFormReport normal_form_verify() {
    NormalFormReport out{};
    out.triple_line_det = det_cubic(triple_line_algebra()).p;
    out.double_line_det = det_cubic(double_line_algebra()).p;
    out.double_line_variant_det = det_cubic(double_line_sign_variant()).p;
    out.ufamily_det = det_cubic(ufamily_algebra(2.0)).p;

    auto identity_residual = [](const Algebra3& a) {
        double worst = 0;
        for (const auto& s : left_zero_divisors(a, 12, 1)) {
            if (s.mult_rank != 2) continue;
            const Vec3 f = phi_of(a, s.d).rep();
            const Vec3 rej = f - s.d.rep() * dot_euclid(f, s.d.rep());
            worst = std::max(worst, norm_euclid(rej));
        }
        return worst;
    };
    out.phi_identity_residual_triple = identity_residual(triple_line_algebra());
    out.phi_identity_residual_double = identity_residual(double_line_algebra());
    return out;
}

}  // namespace equiloci
