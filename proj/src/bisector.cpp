#include "equiloci/bisector.hpp"

#include <algorithm>
#include <cmath>

namespace equiloci {

const char* kind_name(BisectorKind k) {
    switch (k) {
        case BisectorKind::Hyperbolic: return "Hyperbolic";
        case BisectorKind::Spherical: return "Spherical";
        case BisectorKind::Parabolic: return "Parabolic";
    }
    return "?";
}

Geodesic Geodesic::through(const Vec3& a, const Vec3& b) {
    const Complex g = inner(a, b);
    Vec3 b2 = b;
    if (std::abs(g) > 1e-14 * norm_euclid(a) * norm_euclid(b)) {
        b2 = b * (std::abs(g) / g);  // <a, c b> = conj(c) <a,b>; pick c = |g|/g
    }
    return Geodesic{a, b2};
}

double Geodesic::gram_imag_residual() const {
    const double s = std::max({norm2_euclid(w), norm2_euclid(w_prime), 1e-300});
    double r = std::abs(inner(w, w).imag());
    r = std::max(r, std::abs(inner(w_prime, w_prime).imag()));
    r = std::max(r, std::abs(inner(w, w_prime).imag()));
    return r / s;
}

double Meridian::gram_imag_residual() const {
    const Vec3 v[3] = {w, w_prime, q};
    double s = 1e-300, r = 0.0;
    for (const auto& x : v) s = std::max(s, norm2_euclid(x));
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) r = std::max(r, std::abs(inner(v[i], v[j]).imag()));
    return r / s;
}

namespace {

// rank-one map <-, p> p, i.e. x -> (<x,p>) p
Mat3 rank_one(const Vec3& p) { return outer(p, p) * standard_form().j; }

Mat3 normalized_sign(Mat3 h) {
    h = h * (1.0 / frobenius_norm(h));
    // diagonal of J h is real for self-adjoint h; fix the free sign deterministically
    const Mat3 jh = standard_form().j * h;
    std::size_t k = 0;
    double best = std::abs(jh(0, 0));
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(jh(i, i)) > best) {
            best = std::abs(jh(i, i));
            k = i;
        }
    if (best > 1e-14 && jh(k, k).real() < 0) h = -h;
    return h;
}

}  // namespace

BisectorMap BisectorMap::from_matrix(const Mat3& hraw) {
    const double hn = frobenius_norm(hraw);
    if (!(hn > 0)) fail(Err::NotABisector, "zero map");
    if (!is_selfadjoint(hraw, 1e-10)) fail(Err::NotABisector, "map is not self-adjoint");
    if (std::abs(trace(hraw)) > 1e-10 * hn) fail(Err::NotABisector, "map has nonzero trace");

    const Mat3 h = normalized_sign(hraw);
    const RankKernel rk = rank_kernel(h);
    if (rk.rank != 2) fail(Err::NotABisector, "map does not have rank 2");

    BisectorMap b;
    b.h_ = h;
    b.focus_ = ProjectivePoint::from(rk.kernel.front());
    b.eigen_ = eigen3(h);
    const Signature fs = point_signature(b.focus_);
    switch (fs.tag) {
        case SignTag::Negative:
            b.kind_ = BisectorKind::Spherical;
            break;
        case SignTag::Positive: {
            // hyperbolic maps have purely imaginary nonnull eigenvalues (vertices
            // isotropic); real eigenvalues with positive focus give B_h = {f}
            const Complex lam = b.eigen_.values[0];
            if (std::abs(lam.real()) > 1e-7)
                fail(Err::NotABisector, "positive focus with non-imaginary eigenvalues");
            b.kind_ = BisectorKind::Hyperbolic;
            break;
        }
        case SignTag::Isotropic: {
            const Mat3 h3 = h * h * h;
            if (frobenius_norm(h3) > 1e-9) fail(Err::NotABisector, "isotropic focus but h^3 != 0");
            b.kind_ = BisectorKind::Parabolic;
            break;
        }
    }
    return b;
}

BisectorMap bisector_from_points(const ProjectivePoint& p1, const ProjectivePoint& p2) {
    if (p1.same_as(p2)) fail(Err::CoincidentPoints, "bisector needs two distinct points");
    const Signature s1 = point_signature(p1), s2 = point_signature(p2);
    if (s1.tag == SignTag::Isotropic || s2.tag == SignTag::Isotropic)
        fail(Err::IsotropicInput, "bisector endpoints must be non-isotropic");
    const Mat3 h = rank_one(p1.rep()) * (1.0 / s1.value) - rank_one(p2.rep()) * (1.0 / s2.value);
    return BisectorMap::from_matrix(h);
}

bool same_bisector(const BisectorMap& b1, const BisectorMap& b2) {
    const Mat3 d = b1.h() - b2.h();
    const Mat3 s = b1.h() + b2.h();
    return std::min(frobenius_norm(d), frobenius_norm(s)) <= 1e-9;
}

Geodesic real_spine(const BisectorMap& b) {
    if (b.kind() == BisectorKind::Parabolic) {
        const ParabolicBasis nb = parabolic_normal_basis(b);
        return Geodesic{nb.hp, I * nb.hhp};
    }
    const Eigen3& e = b.eigen();
    Vec3 v1 = e.vectors[0], v2 = e.vectors[1];  // nonnull eigenvalues sort first
    if (b.kind() == BisectorKind::Hyperbolic) {
        // vertices are isotropic; rescale for Gram [[0,1],[1,0]]
        const Complex g = inner(v1, v2);
        v2 = v2 * (1.0 / std::conj(g));
        return Geodesic{v1, v2};
    }
    // spherical: orthogonal positive vertices; C cap B_h = {conj(u) v1 + u v2 : |u| = 1}
    v1 = v1 / std::sqrt(std::abs(inner(v1, v1).real()));
    v2 = v2 / std::sqrt(std::abs(inner(v2, v2).real()));
    return Geodesic{v1 + v2, I * (v2 - v1)};
}

ParabolicBasis parabolic_normal_basis(const BisectorMap& b, std::uint64_t seed) {
    if (b.kind() != BisectorKind::Parabolic)
        fail(Err::NotParabolic, "normal basis needs a parabolic bisector");
    const Mat3& h = b.h();

    // d must avoid hV; hV is the Euclidean orthocomplement of ker h^H
    const RankKernel left = rank_kernel(ctranspose(h));
    const Vec3 n = left.kernel.front();

    Rng rng(0x9e2ab15ec70aULL ^ seed);
    Vec3 d{1, 0, 0};
    bool found = false;
    for (int tries = 0; tries < 64; ++tries) {
        Vec3 cand = tries == 0 ? Vec3{1, 0, 0}
                  : tries == 1 ? Vec3{0, 1, 0}
                  : tries == 2 ? Vec3{0, 0, 1}
                               : rng.gaussian_vec3();
        cand = cand / norm_euclid(cand);
        if (std::abs(dot_euclid(cand, n)) > 0.1) {
            d = cand;
            found = true;
            break;
        }
    }
    if (!found) fail(Err::IllConditioned, "no direction off the complex spine found");

    const Vec3 hd = h * d;
    const double hd_d = inner(hd, d).real();
    const double hhd_d = inner(h * hd, d).real();
    const double r = -hd_d / (2.0 * hhd_d);
    Vec3 p = d + r * hd;

    // shift inside the slice span{p, f} to an isotropic representative
    const Vec3 f = h * (h * p);
    const Complex fp = inner(f, p);
    const Complex t = -inner(p, p) / (2.0 * fp);
    p = p + t * f;

    const double g = inner(h * p, h * p).real();
    p = p / std::sqrt(g);

    ParabolicBasis out;
    out.p = p;
    out.hp = h * p;
    out.hhp = h * out.hp;
    const Vec3 v[3] = {out.p, out.hp, out.hhp};
    const Complex target[3][3] = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    double resid = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            resid = std::max(resid, std::abs(inner(v[i], v[j]) - target[i][j]));
    out.gram_residual = resid;
    return out;
}

BisectorMap bisector_from_spine(const Geodesic& g) {
    const Mat3 m = I * (outer(g.w_prime, g.w) - outer(g.w, g.w_prime)) * standard_form().j;
    const double scale = norm2_euclid(g.w) + norm2_euclid(g.w_prime);
    if (frobenius_norm(m) <= 1e-12 * scale)
        fail(Err::DegenerateSpan, "spine representatives are projectively equal");
    return BisectorMap::from_matrix(m);
}

bool contains_rep(const BisectorMap& b, const Vec3& rep, double tol) {
    const double v = std::abs(inner(b.h() * rep, rep));
    return v <= tol * frobenius_norm(b.h()) * norm2_euclid(rep);
}

bool contains(const BisectorMap& b, const ProjectivePoint& p, double tol) {
    return contains_rep(b, p.rep(), tol);
}

Slice slice_through(const BisectorMap& b, const ProjectivePoint& p) {
    if (p.same_as(b.focus())) fail(Err::FocusInput, "slice through the focus is undefined");
    if (!contains(b, p)) fail(Err::NotOnBisector, "slice generator must lie on the bisector");
    return Slice{ProjectivePoint::from(b.h() * p.rep()), b.focus(), p};
}

bool on_real_span(const std::vector<Vec3>& real_span, const Vec3& c, double rtol) {
    // C c intersects span_R(...) iff the realified stack [span | c | i c] drops rank
    RMat m(6, real_span.size() + 2);
    auto put = [&](std::size_t j, const Vec3& v) {
        for (std::size_t k = 0; k < 3; ++k) {
            m(2 * k, j) = v[k].real();
            m(2 * k + 1, j) = v[k].imag();
        }
    };
    for (std::size_t j = 0; j < real_span.size(); ++j)
        put(j, real_span[j] / norm_euclid(real_span[j]));
    put(real_span.size(), c / norm_euclid(c));
    put(real_span.size() + 1, (I * c) / norm_euclid(c));
    Svd<double> s = svd_any(m);
    const std::size_t full = std::min<std::size_t>(6, real_span.size() + 2);
    return s.sigma[full - 1] <= rtol * s.sigma[0];
}

Meridian meridian_through(const BisectorMap& b, const ProjectivePoint& q) {
    if (q.same_as(b.focus())) fail(Err::FocusInput, "meridian through the focus is undefined");
    if (!contains(b, q)) fail(Err::NotOnBisector, "meridian generator must lie on the bisector");
    if (std::abs(inner(q.rep(), b.focus().rep())) < 1e-9)
        fail(Err::OnComplexSpine, "points of the complex spine lie in no meridian");

    const Geodesic spine = real_spine(b);
    const Complex f1 = inner(spine.w, q.rep());
    const Complex f2 = inner(spine.w_prime, q.rep());
    const Complex phi = std::abs(f1) >= std::abs(f2) ? f1 : f2;
    Vec3 qhat = q.rep();
    if (std::abs(phi) > 1e-13) qhat = qhat * (phi / std::abs(phi));
    return Meridian{spine.w, spine.w_prime, qhat};
}

NormalCovector normal_vector(const BisectorMap& b, const ProjectivePoint& p) {
    if (p.same_as(b.focus())) fail(Err::FocusInput, "normal vector at the focus is undefined");
    if (point_signature(p).tag == SignTag::Isotropic)
        fail(Err::IsotropicInput, "normal vector needs a non-isotropic point");
    if (!contains(b, p)) fail(Err::NotOnBisector, "normal vector needs a bisector point");
    return NormalCovector{b.h() * p.rep(), p.rep()};
}

Vec3 random_point_on(const BisectorMap& b, Rng& rng) {
    const Geodesic spine = real_spine(b);
    const Vec3 f = b.focus().rep();
    for (int tries = 0; tries < 256; ++tries) {
        const double a = rng.gaussian(), c = rng.gaussian();
        const Vec3 r = spine.at(a, c);
        if (norm_euclid(r) < 1e-8) continue;
        // the slice polar to r is spanned by f and u, both orthogonal to r
        const Vec3 jr = standard_form().j * equiloci::conj(r);
        Vec3 u{};
        double best = -1.0;
        for (int k = 0; k < 3; ++k) {
            Vec3 e{};
            e[k] = 1.0;
            const Vec3 cand = cross_bilinear(jr, standard_form().j * equiloci::conj(e));
            if (norm_euclid(cand) > best) {
                best = norm_euclid(cand);
                u = cand;
            }
        }
        // u is orthogonal to r; combine with f (also orthogonal to r) for slice points
        const Vec3 x = f * rng.gaussian_complex() + u * (rng.gaussian_complex() / norm_euclid(u));
        if (norm_euclid(x) < 1e-10) continue;
        if (contains_rep(b, x, 1e-7)) return x / norm_euclid(x);
    }
    fail(Err::IllConditioned, "bisector point sampler failed");
}

Vec3 random_negative_point_on(const BisectorMap& b, Rng& rng, int budget) {
    // ball points live in slices with a positive polar point; inside such a slice the
    // restricted form has signature +-, and its negative cone is sampled directly
    const Geodesic spine = real_spine(b);
    const Vec3 f = b.focus().rep();
    for (int tries = 0; tries < budget; ++tries) {
        const Vec3 r = spine.at(rng.gaussian(), rng.gaussian());
        if (norm_euclid(r) < 1e-8) continue;
        if (inner(r, r).real() <= kTolSig) continue;  // need a positive polar point
        const Vec3 jr = standard_form().j * equiloci::conj(r);
        Vec3 u{};
        double best = -1.0;
        for (int k = 0; k < 3; ++k) {
            Vec3 e{};
            e[k] = 1.0;
            const Vec3 cand = cross_bilinear(jr, standard_form().j * equiloci::conj(e));
            if (norm_euclid(cand) > best) {
                best = norm_euclid(cand);
                u = cand;
            }
        }
        u = u / norm_euclid(u);
        // 2x2 Hermitian form on span(f, u); diagonalize and walk the negative cone
        const double gff = inner(f, f).real();
        const double guu = inner(u, u).real();
        const Complex gfu = inner(f, u);
        const double tr = gff + guu;
        const double dt = gff * guu - std::norm(gfu);
        const double disc = std::sqrt(std::max(tr * tr - 4.0 * dt, 0.0));
        const double lminus = 0.5 * (tr - disc), lplus = 0.5 * (tr + disc);
        if (lminus >= -1e-12) continue;  // slice misses the ball
        // eigenvector for lminus: (gff - lminus) a + conj(gfu) b = 0
        Complex a = -std::conj(gfu), bb = gff - lminus;
        if (std::abs(bb) + std::abs(a) < 1e-12) {
            a = guu - lminus;
            bb = -std::conj(gfu);
        }
        Vec3 vminus = f * a + u * bb;
        const double nm = norm_euclid(vminus);
        if (nm < 1e-12) continue;
        vminus = vminus / nm;
        Vec3 vplus{};
        if (lplus > 1e-12) {
            Complex c2 = -std::conj(gfu), d2 = gff - lplus;
            Vec3 w = f * c2 + u * d2;
            // closed form degenerates when gfu = 0 and lplus = gff: vplus is f itself
            if (norm_euclid(w) < 1e-10) w = f - vminus * dot_euclid(f, vminus);
            vplus = w / norm_euclid(w);
            const double qm = inner(vminus, vminus).real();
            const double qp = inner(vplus, vplus).real();
            if (qp <= 1e-12) continue;
            const double radius = 0.9 * std::sqrt(-qm / qp);
            const double rho = radius * std::sqrt(rng.uniform());
            const double phi = rng.uniform(0.0, 2.0 * M_PI);
            const Vec3 x = vminus + (rho * std::exp(I * phi)) * vplus;
            if (inner(x, x).real() < -kTolSig && contains_rep(b, x, 1e-8))
                return x / norm_euclid(x);
        } else {
            if (inner(vminus, vminus).real() < -kTolSig && contains_rep(b, vminus, 1e-8))
                return vminus;
        }
    }
    fail(Err::EmptyBaseRegion, "no negative point found on the bisector");
}

SpineReflection reflect_in_spine(const BisectorMap& b, const ProjectivePoint& c1) {
    const Vec3 f = b.focus().rep();
    if (std::abs(inner(c1.rep(), f)) > 1e-9)
        fail(Err::NotOnComplexSpine, "reflection input must lie on the complex spine");
    const Geodesic spine = real_spine(b);
    if (on_real_span({spine.w, spine.w_prime}, c1.rep(), 1e-8))
        fail(Err::OnRealSpine, "real-spine points are fixed; reflection undefined");

    const Mat3& h = b.h();
    CMat a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = h(i, j);
    auto solve_pre = [&](const Vec3& c) {
        std::vector<Complex> rhs{c[0], c[1], c[2]};
        auto x = lstsq(a, rhs, 1e-9);
        return Vec3{x[0], x[1], x[2]};
    };

    // c2 is the intersection of P(q1-orthocomplement) with the complex spine
    const Vec3 q1 = solve_pre(c1.rep());
    const Vec3 jq1 = standard_form().j * equiloci::conj(q1);
    const Vec3 jf = standard_form().j * equiloci::conj(f);
    Vec3 c2 = cross_bilinear(jq1, jf);
    if (norm_euclid(c2) < 1e-12) fail(Err::IllConditioned, "reflection target degenerated");
    c2 = c2 / norm_euclid(c2);
    const Vec3 q2 = solve_pre(c2);

    const double r1 = inner(q1, c1.rep()).real();
    const double r2 = inner(q2, c2).real();
    const Vec3 c1s = c1.rep() / std::sqrt(std::abs(r1));
    const Vec3 c2s = c2 / std::sqrt(std::abs(r2));
    const int sign = r1 > 0 ? 1 : -1;
    const Mat3 recon = rank_one(c1s) - rank_one(c2s);
    const double resid = frobenius_norm(recon - h * double(sign)) / frobenius_norm(h);

    SpineReflection out;
    out.c2 = ProjectivePoint::from(c2);
    out.c1_rep = c1s;
    out.c2_rep = c2s;
    out.sign = sign;
    out.residual = resid;
    return out;
}

}  // namespace equiloci
