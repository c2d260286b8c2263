#include "equiloci/hermitian.hpp"

#include <algorithm>
#include <cmath>

namespace equiloci {

const char* err_name(Err e) {
    switch (e) {
        case Err::NonNegativePoint: return "NonNegativePoint";
        case Err::CoincidentPoints: return "CoincidentPoints";
        case Err::IsotropicInput: return "IsotropicInput";
        case Err::NotParabolic: return "NotParabolic";
        case Err::DegenerateSpan: return "DegenerateSpan";
        case Err::FocusInput: return "FocusInput";
        case Err::NotOnBisector: return "NotOnBisector";
        case Err::OnComplexSpine: return "OnComplexSpine";
        case Err::OnRealSpine: return "OnRealSpine";
        case Err::NotOnComplexSpine: return "NotOnComplexSpine";
        case Err::DependentBasis: return "DependentBasis";
        case Err::NotOnAllBisectors: return "NotOnAllBisectors";
        case Err::ConfocalFamily: return "ConfocalFamily";
        case Err::NotALinearFamily: return "NotALinearFamily";
        case Err::EmptyBaseRegion: return "EmptyBaseRegion";
        case Err::IsLinearFamily: return "IsLinearFamily";
        case Err::CollinearTriple: return "CollinearTriple";
        case Err::MixedSignature: return "MixedSignature";
        case Err::NonGenericFamily: return "NonGenericFamily";
        case Err::InsufficientSamples: return "InsufficientSamples";
        case Err::UnexpectedDimension: return "UnexpectedDimension";
        case Err::SpanIsLinearFamily: return "SpanIsLinearFamily";
        case Err::NotAZeroDivisor: return "NotAZeroDivisor";
        case Err::RankDeficient: return "RankDeficient";
        case Err::IllConditioned: return "IllConditioned";
        case Err::NotABisector: return "NotABisector";
    }
    return "UnknownError";
}

const char* sign_name(SignTag t) {
    switch (t) {
        case SignTag::Positive: return "Positive";
        case SignTag::Isotropic: return "Isotropic";
        case SignTag::Negative: return "Negative";
    }
    return "?";
}

ProjectivePoint ProjectivePoint::from(const Vec3& representative) {
    const double n = norm_euclid(representative);
    if (n == 0.0) fail(Err::IsotropicInput, "zero vector is not a projective representative");
    Vec3 v = representative / n;
    std::size_t k = 0;
    double best = std::abs(v[0]);
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            k = i;
        }
    const Complex phase = std::abs(v[k]) > 0 ? std::conj(v[k]) / std::abs(v[k]) : Complex(1.0);
    return ProjectivePoint(v * phase);
}

bool ProjectivePoint::same_as(const ProjectivePoint& other) const {
    // phase-free comparison of unit representatives; the slack absorbs the ~1e-15
    // rounding noise of the dot product while still resolving angles above 1e-7
    const double ip = std::norm(dot_euclid(rep_, other.rep_));
    return ip >= (1.0 - 1e-14);
}

Signature point_signature(const ProjectivePoint& p, const HermitianForm& f) {
    const double v = std::real(inner(p.rep(), p.rep(), f));
    // representative has unit Euclidean norm, so the relative threshold is just kTolSig
    if (std::abs(v) <= kTolSig) return {SignTag::Isotropic, v};
    return {v > 0 ? SignTag::Positive : SignTag::Negative, v};
}

double distance(const ProjectivePoint& p1, const ProjectivePoint& p2, const HermitianForm& f) {
    const Signature s1 = point_signature(p1, f), s2 = point_signature(p2, f);
    if (s1.tag != SignTag::Negative) fail(Err::NonNegativePoint, "first argument of distance");
    if (s2.tag != SignTag::Negative) fail(Err::NonNegativePoint, "second argument of distance");
    const Complex g12 = inner(p1.rep(), p2.rep(), f);
    const double ratio = std::norm(g12) / (s1.value * s2.value);
    const double c = std::sqrt(std::max(ratio, 1.0));
    return std::acosh(c);
}

Mat3 adjoint(const Mat3& h, const HermitianForm& f) {
    // J^-1 h^H J with J = J^-1 in the standard chart
    return f.j * ctranspose(h) * f.j;
}

RankKernel rank_kernel(const Mat3& h, double tol) {
    if (!(tol > 0)) fail(Err::IllConditioned, "rank tolerance must be positive");
    CMat a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = h(i, j);
    Svd<Complex> s = svd_jacobi(a);
    RankKernel out{};
    for (std::size_t i = 0; i < 3; ++i) out.singular_values[i] = s.sigma[i];
    const double smax = s.sigma[0];
    out.rank = 0;
    for (std::size_t j = 0; j < 3; ++j) {
        if (smax > 0.0 && s.sigma[j] > tol * smax) {
            ++out.rank;
        } else {
            auto c = s.v.column(j);
            out.kernel.push_back(Vec3{c[0], c[1], c[2]});
        }
    }
    return out;
}

namespace {

std::array<Complex, 3> cubic_roots_monic(Complex a, Complex b, Complex c) {
    // roots of x^3 + a x^2 + b x + c
    const Complex shift = a / 3.0;
    const Complex p = b - a * a / 3.0;
    const Complex q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    std::array<Complex, 3> t;
    const double scale = std::max({std::abs(p), std::abs(q), 1e-300});
    if (std::abs(p) < 1e-14 * scale && std::abs(q) < 1e-14 * scale) {
        t = {Complex(0), Complex(0), Complex(0)};
    } else {
        const Complex disc = q * q / 4.0 + p * p * p / 27.0;
        const Complex s = std::sqrt(disc);
        Complex u3 = -q / 2.0 + s;
        if (std::abs(-q / 2.0 - s) > std::abs(u3)) u3 = -q / 2.0 - s;
        const Complex u = std::pow(u3, 1.0 / 3.0);
        const Complex w(-0.5, std::sqrt(3.0) / 2.0);
        for (int k = 0; k < 3; ++k) {
            const Complex uk = u * std::pow(w, k);
            const Complex vk = std::abs(uk) > 0 ? -p / (3.0 * uk) : Complex(0);
            t[k] = uk + vk;
        }
    }
    for (auto& r : t) r -= shift;
    return t;
}

}  // namespace

Eigen3 eigen3(const Mat3& h) {
    const Complex c2 = trace(h);
    const Complex c1 = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)) +
                       (h(0, 0) * h(2, 2) - h(0, 2) * h(2, 0)) +
                       (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1));
    const Complex c0 = det(h);
    // char(x) = x^3 - c2 x^2 + c1 x - c0
    auto roots = cubic_roots_monic(-c2, c1, -c0);

    const double hn = std::max(frobenius_norm(h), 1e-300);
    auto poly = [&](Complex x) { return ((x - c2) * x + c1) * x - c0; };
    auto dpoly = [&](Complex x) { return (3.0 * x - 2.0 * c2) * x + c1; };
    for (auto& r : roots) {
        const Complex dp = dpoly(r);
        if (std::abs(dp) > 1e-8 * hn * hn) r -= poly(r) / dp;  // one polish step, guarded
    }
    std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
        if (std::abs(x) != std::abs(y)) return std::abs(x) > std::abs(y);
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });

    Eigen3 out{};
    out.values = roots;
    out.max_residual = 0.0;
    for (int k = 0; k < 3; ++k) {
        const Mat3 shifted = h - Mat3::identity() * roots[k];
        const Mat3 adj = adjugate(shifted);
        Vec3 v = col(adj, 0);
        for (std::size_t j = 1; j < 3; ++j)
            if (norm_euclid(col(adj, j)) > norm_euclid(v)) v = col(adj, j);
        if (norm_euclid(v) <= 1e-13 * hn * hn) {
            RankKernel rk = rank_kernel(shifted, 1e-7);
            v = rk.kernel.empty() ? Vec3{1, 0, 0} : rk.kernel.front();
        }
        v = v / norm_euclid(v);
        out.vectors[k] = v;
        const Vec3 resid = h * v - roots[k] * v;
        out.max_residual = std::max(out.max_residual, norm_euclid(resid));
    }
    out.ill_conditioned = out.max_residual > 1e-10 * hn;
    return out;
}

Mat3 hermitian_from_params(const std::array<double, 9>& p) {
    Mat3 hh;
    hh(0, 0) = p[0];
    hh(1, 1) = p[1];
    hh(2, 2) = p[2];
    hh(0, 1) = Complex(p[3], p[4]);
    hh(1, 0) = std::conj(hh(0, 1));
    hh(0, 2) = Complex(p[5], p[6]);
    hh(2, 0) = std::conj(hh(0, 2));
    hh(1, 2) = Complex(p[7], p[8]);
    hh(2, 1) = std::conj(hh(1, 2));
    return hh;
}

std::array<double, 9> params_from_hermitian(const Mat3& hh) {
    return {hh(0, 0).real(), hh(1, 1).real(), hh(2, 2).real(),
            hh(0, 1).real(), hh(0, 1).imag(), hh(0, 2).real(),
            hh(0, 2).imag(), hh(1, 2).real(), hh(1, 2).imag()};
}

namespace {

// Row of the linear system "b^H H b = 0" over the 9 Hermitian parameters.
std::array<double, 9> membership_row(const Vec3& braw) {
    const Vec3 b = braw / norm_euclid(braw);
    std::array<double, 9> row{};
    row[0] = std::norm(b[0]);
    row[1] = std::norm(b[1]);
    row[2] = std::norm(b[2]);
    const Complex z01 = std::conj(b[0]) * b[1];
    const Complex z02 = std::conj(b[0]) * b[2];
    const Complex z12 = std::conj(b[1]) * b[2];
    row[3] = 2.0 * z01.real();
    row[4] = -2.0 * z01.imag();
    row[5] = 2.0 * z02.real();
    row[6] = -2.0 * z02.imag();
    row[7] = 2.0 * z12.real();
    row[8] = -2.0 * z12.imag();
    return row;
}

}  // namespace

VanishingFamily solve_vanishing_family(const std::vector<Vec3>& samples, bool traceless,
                                       double rtol) {
    const std::size_t np = traceless ? 8 : 9;
    RMat a(samples.size(), np);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto row = membership_row(samples[i]);
        if (traceless) {
            // substitute H22 = H00 + H11 (trace of J*H vanishes)
            a(i, 0) = row[0] + row[2];
            a(i, 1) = row[1] + row[2];
            for (std::size_t k = 3; k < 9; ++k) a(i, k - 1) = row[k];
        } else {
            for (std::size_t k = 0; k < 9; ++k) a(i, k) = row[k];
        }
    }
    Svd<double> s = svd_any(a);
    VanishingFamily out;
    out.sigmas = s.sigma;
    const double smax = s.sigma.empty() ? 0.0 : s.sigma[0];
    for (std::size_t j = 0; j < np; ++j) {
        const double sj = j < s.sigma.size() ? s.sigma[j] : 0.0;
        if (smax > 0.0 && sj > rtol * smax) continue;
        auto v = s.v.column(j);
        std::array<double, 9> p{};
        if (traceless) {
            p[0] = v[0];
            p[1] = v[1];
            p[2] = v[0] + v[1];
            for (std::size_t k = 3; k < 9; ++k) p[k] = v[k - 1];
        } else {
            for (std::size_t k = 0; k < 9; ++k) p[k] = v[k];
        }
        out.basis.push_back(selfadjoint_from_hermitian(hermitian_from_params(p)));
    }
    out.dim = out.basis.size();
    return out;
}

RMat realify_matrix_span(const std::vector<Mat3>& span) {
    RMat m(18, span.size());
    for (std::size_t j = 0; j < span.size(); ++j)
        for (std::size_t k = 0; k < 9; ++k) {
            m(2 * k, j) = span[j].a[k].real();
            m(2 * k + 1, j) = span[j].a[k].imag();
        }
    return m;
}

double matrix_span_max_angle(const std::vector<Mat3>& a, const std::vector<Mat3>& b) {
    return subspace_max_angle(realify_matrix_span(a), realify_matrix_span(b));
}

ProjectivePoint random_point(Rng& rng) { return ProjectivePoint::from(rng.gaussian_vec3()); }

ProjectivePoint random_negative_point(Rng& rng) {
    // interior of the ball: (u, w) with |u| < 1 scaled against the last coordinate
    for (int tries = 0; tries < 1000; ++tries) {
        ProjectivePoint p = random_point(rng);
        if (point_signature(p).tag == SignTag::Negative) return p;
    }
    return ProjectivePoint::from({0.0, 0.0, 1.0});
}

ProjectivePoint random_positive_point(Rng& rng) {
    for (int tries = 0; tries < 1000; ++tries) {
        ProjectivePoint p = random_point(rng);
        if (point_signature(p).tag == SignTag::Positive) return p;
    }
    return ProjectivePoint::from({1.0, 0.0, 0.0});
}

ProjectivePoint random_isotropic_point(Rng& rng) {
    // boundary points (u1,u2,1) with |u1|^2+|u2|^2 = 1
    const double t = rng.uniform(0.0, 2.0 * M_PI);
    const double a = rng.uniform(0.0, 2.0 * M_PI);
    const double b = rng.uniform(0.0, 2.0 * M_PI);
    const Vec3 v{std::cos(t) * std::exp(I * a), std::sin(t) * std::exp(I * b), 1.0};
    return ProjectivePoint::from(v);
}

Mat3 random_form_unitary(Rng& rng, double scale) {
    std::array<double, 9> p{};
    for (auto& x : p) x = scale * rng.gaussian();
    const Mat3 hh = hermitian_from_params(p);
    const Mat3 k = I * (standard_form().j * hh);  // i*J*H satisfies K^H J + J K = 0
    // scaling-and-squaring exponential; 3x3 norms here are O(scale)
    Mat3 g = Mat3::identity();
    int squarings = 0;
    Mat3 ks = k;
    double nk = frobenius_norm(ks);
    while (nk > 0.5 && squarings < 40) {
        ks = ks * 0.5;
        nk *= 0.5;
        ++squarings;
    }
    Mat3 term = Mat3::identity();
    for (int n = 1; n <= 16; ++n) {
        term = term * ks * (1.0 / n);
        g = g + term;
    }
    for (int s = 0; s < squarings; ++s) g = g * g;
    return g;
}

}  // namespace equiloci
