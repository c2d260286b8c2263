#include "equiloci/equitant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace equiloci {

const char* equitant_tag_name(EquitantTag t) {
    switch (t) {
        case EquitantTag::ThreeLines: return "ThreeLines";
        case EquitantTag::ConicPlusLine: return "ConicPlusLine";
        case EquitantTag::NodalSymmetric: return "NodalSymmetric";
        case EquitantTag::NodalAsymmetric: return "NodalAsymmetric";
        case EquitantTag::Smooth: return "Smooth";
    }
    return "?";
}

namespace {

Mat3 rank_one(const Vec3& p) { return outer(p, p) * standard_form().j; }

// rows <-, p_i> as a 3x3 matrix: row i = p_i^H J
CMat pairing_rows(const std::array<Vec3, 4>& pts, int count) {
    CMat m(count, 3);
    for (int i = 0; i < count; ++i) {
        const Vec3 r = standard_form().j * equiloci::conj(pts[i]);
        for (int k = 0; k < 3; ++k) m(i, k) = r[k];
    }
    return m;
}

}  // namespace

EquitantFamily EquitantFamily::make(const std::array<Vec3, 4>& raw, SignTag sigma) {
    std::array<Vec3, 4> pts = raw;
    for (auto& p : pts) {
        const double n2 = std::real(inner(p, p));
        const Signature sg = point_signature(ProjectivePoint::from(p));
        if (sg.tag != sigma) fail(Err::MixedSignature, "point signature differs from the declared sigma");
        if (sigma != SignTag::Isotropic) p = p / std::sqrt(std::abs(n2));
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (ProjectivePoint::from(pts[i]).same_as(ProjectivePoint::from(pts[j])))
                fail(Err::CoincidentPoints, "equitant points must be pairwise distinct");

    // no 3 points on a complex line: all four 3x3 minors bounded away from zero
    for (int drop = 0; drop < 4; ++drop) {
        Mat3 m;
        int col = 0;
        for (int i = 0; i < 4; ++i) {
            if (i == drop) continue;
            const Vec3 u = pts[i] / norm_euclid(pts[i]);
            for (int k = 0; k < 3; ++k) m(k, col) = u[k];
            ++col;
        }
        if (std::abs(det(m)) < 1e-8) fail(Err::CollinearTriple, "three points lie on a complex line");
    }

    // essentially unique dependence: null vector of the 3x4 representative matrix
    CMat rep(3, 4);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 3; ++k) rep(k, i) = pts[i][k];
    auto null = nullspace(rep, 1e-10);
    if (null.size() != 1) fail(Err::CollinearTriple, "dependence between the points is not unique");
    std::array<Complex, 4> lam{null[0][0], null[0][1], null[0][2], null[0][3]};
    // deterministic gauge: first coefficient real positive
    const Complex gauge = std::conj(lam[0]) / std::abs(lam[0]);
    for (auto& l : lam) l *= gauge;

    EquitantFamily fam;
    fam.sigma_ = sigma;
    std::array<double, 4> mags;
    for (int i = 0; i < 4; ++i) {
        mags[i] = std::abs(lam[i]);
        if (mags[i] < 1e-10) fail(Err::CollinearTriple, "degenerate dependence coefficient");
        pts[i] = pts[i] * (lam[i] / mags[i]);  // rephase: the w_i are unchanged
    }
    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return mags[x] > mags[y]; });
    for (int i = 0; i < 4; ++i) {
        fam.points_[i] = pts[order[i]];
        fam.a_[i] = mags[order[i]] / mags[order[3]];  // a4 = 1
        fam.w_[i] = rank_one(fam.points_[i]);
    }
    fam.basis_ = {fam.w_[0] - fam.w_[1], fam.w_[1] - fam.w_[2], fam.w_[2] - fam.w_[3]};

    // elliptic, not linear: the determinant form must not vanish on the span
    double scale = 0;
    for (const auto& b : fam.basis_) scale = std::max(scale, frobenius_norm(b));
    const CubicC probe = interpolate_cubic([&](double x1, double x2, double x3) {
        return det(fam.at(x1, x2, x3));
    });
    if (probe.coeff_norm() < 1e-9 * scale * scale * scale)
        fail(Err::CollinearTriple, "the span is a linear family, not an elliptic one");
    return fam;
}

CubicR cubic_EW(const EquitantFamily& fam) {
    double scale = 0;
    for (const auto& b : fam.basis()) scale = std::max(scale, frobenius_norm(b));
    const CubicR p = interpolate_cubic_real(
        [&](double x1, double x2, double x3) { return det(fam.at(x1, x2, x3)); },
        1e-10 * scale * scale * scale);
    return p.normalized();
}

EquitantCase classify_equitant(const EquitantFamily& fam) {
    const auto& a = fam.a();
    const double tol = 1e-9 * a[0];
    const double warn = 1e-6 * a[0];

    auto eq = [&](double x, double y, double t) { return std::abs(x - y) <= t; };

    EquitantCase out{};
    std::vector<std::array<int, 4>> patterns;
    if (eq(a[0], a[1], tol) && eq(a[1], a[2], tol) && eq(a[2], a[3], tol)) {
        out.tag = EquitantTag::ThreeLines;
        patterns = {{1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
    } else if (eq(a[0], a[1], tol) && eq(a[2], a[3], tol)) {
        out.tag = EquitantTag::ConicPlusLine;
        patterns = {{1, -1, 1, -1}, {1, -1, -1, 1}};
    } else if (eq(a[0] + a[3], a[1] + a[2], tol)) {
        out.tag = EquitantTag::NodalSymmetric;
        patterns = {{1, -1, -1, 1}};
    } else if (eq(a[0], a[1] + a[2] + a[3], tol)) {
        out.tag = EquitantTag::NodalAsymmetric;
        patterns = {{1, -1, -1, -1}};
    } else {
        out.tag = EquitantTag::Smooth;
        if (eq(a[0] + a[3], a[1] + a[2], warn)) out.near_degenerate = EquitantTag::NodalSymmetric;
        if (eq(a[0], a[1] + a[2] + a[3], warn)) out.near_degenerate = EquitantTag::NodalAsymmetric;
        if (eq(a[0], a[1], warn) && eq(a[2], a[3], warn))
            out.near_degenerate = EquitantTag::ConicPlusLine;
    }

    // each pattern determines a unique focus s from three pairing equations; the
    // fourth holds because sum eps_i a_i = 0
    const CMat rows = pairing_rows(fam.points(), 3);
    for (const auto& eps : patterns) {
        std::vector<Complex> rhs{double(eps[0]), double(eps[1]), double(eps[2])};
        auto x = lstsq(rows, rhs);
        const Vec3 s{x[0], x[1], x[2]};
        const Complex fourth = inner(s, fam.points()[3]);
        SingularFocus sf;
        sf.point = ProjectivePoint::from(s);
        sf.eps = eps;
        sf.defect = std::abs(fourth - double(eps[3]));
        out.singular_foci.push_back(sf);
    }
    return out;
}

std::array<double, 4> biquadratic_coefficients(const std::array<double, 4>& a) {
    const double d = 4.0 * a[0] * a[1];
    return {
        (a[0] + a[1] + a[2] + a[3]) * (a[0] + a[1] + a[2] - a[3]) / d,
        (a[0] - a[1] + a[2] + a[3]) * (a[0] - a[1] + a[2] - a[3]) / d,
        (a[0] - a[1] - a[2] + a[3]) * (a[0] - a[1] - a[2] - a[3]) / d,
        (a[0] + a[1] - a[2] + a[3]) * (a[0] + a[1] - a[2] - a[3]) / d,
    };
}

BaseBiquadratic base_biquadratic(const EquitantFamily& fam) {
    const auto r = biquadratic_coefficients(fam.a());
    return {r[0], r[1], r[2], r[3]};
}

TraceResult trace_base(const EquitantFamily& fam, int n) {
    TraceResult out{};
    // dual basis <q_i, p_j> = delta_ij from the pairing rows of p_1..p_3
    const CMat rows = pairing_rows(fam.points(), 3);
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) m(i, k) = rows(i, k);
    const Mat3 minv = inverse(m);
    {
        CMat mm(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < 3; ++k) mm(i, k) = m(i, k);
        Svd<Complex> s = svd_jacobi(mm);
        out.dual_condition = s.sigma[0] / std::max(s.sigma[2], 1e-300);
    }
    const Vec3 q1 = col(minv, 0), q2 = col(minv, 1), q3 = col(minv, 2);

    const auto r = biquadratic_coefficients(fam.a());
    const bool ball_family = fam.sigma() == SignTag::Negative;

    for (int k = 0; k < n; ++k) {
        const double theta = M_PI * k / n;
        const double s0 = std::cos(theta), s1 = std::sin(theta);
        const double A = r[0] * s0 * s0 + r[2] * s1 * s1;
        const double B = 2.0 * s0 * s1;
        const double C = r[1] * s0 * s0 + r[3] * s1 * s1;
        // projective roots of A t0^2 + B t0 t1 + C t1^2; tangency parameters sit on
        // the disc = 0 boundary and must survive rounding (isolated nodal base points)
        std::vector<std::pair<double, double>> troots;
        double disc = B * B - 4.0 * A * C;
        if (disc < 0) {
            if (disc > -1e-12 * (A * A + B * B + C * C)) {
                disc = 0;
            } else {
                ++out.skipped_parameters;
                continue;
            }
        }
        const double sq = std::sqrt(disc);
        if (std::abs(A) >= std::abs(C)) {
            if (std::abs(A) < 1e-14) {
                ++out.skipped_parameters;  // degenerate quadratic
                continue;
            }
            troots.push_back({(-B + sq) / (2 * A), 1.0});
            troots.push_back({(-B - sq) / (2 * A), 1.0});
        } else {
            troots.push_back({1.0, (-B + sq) / (2 * C)});
            troots.push_back({1.0, (-B - sq) / (2 * C)});
        }
        for (auto [t0, t1] : troots) {
            const double tn = std::sqrt(t0 * t0 + t1 * t1);
            t0 /= tn;
            t1 /= tn;
            TracedPoint tp{};
            tp.s0 = s0;
            tp.s1 = s1;
            tp.t0 = t0;
            tp.t1 = t1;
            const Complex zs{s0, s1}, zt{t0, t1};
            tp.x1 = zs * zs / std::norm(zs);
            tp.x2 = zt * zt / std::norm(zt);
            tp.q = q1 * tp.x1 + q2 * tp.x2 + q3;
            double spread = 0.0;
            const double ref = std::abs(inner(tp.q, fam.points()[0]));
            for (int i = 1; i < 4; ++i)
                spread = std::max(spread, std::abs(std::abs(inner(tp.q, fam.points()[i])) - ref));
            tp.coord_spread = spread;
            tp.signature = point_signature(ProjectivePoint::from(tp.q)).tag;
            tp.distance_spread = std::numeric_limits<double>::quiet_NaN();
            if (ball_family && tp.signature == SignTag::Negative) {
                const auto qp = ProjectivePoint::from(tp.q);
                double dmin = 1e300, dmax = 0;
                for (int i = 0; i < 4; ++i) {
                    const double d = distance(qp, ProjectivePoint::from(fam.points()[i]));
                    dmin = std::min(dmin, d);
                    dmax = std::max(dmax, d);
                }
                tp.distance_spread = dmax - dmin;
            }
            out.points.push_back(tp);
        }
    }
    return out;
}

IrreducibilityReport irreducibility_report(const EquitantFamily& fam) {
    const auto r = biquadratic_coefficients(fam.a());
    IrreducibilityReport out{false, "", r};
    const auto& a = fam.a();
    const double tol = 1e-8 * a[0];
    // r00 > 0 always; r11 = 0 forces a1=a2=a3=a4, r01 = 0 forces a1=a2, a3=a4
    if (std::abs(a[0] + a[1] - a[2] - a[3]) <= tol) {
        out.reducible = true;
        out.mechanism = "r11 = 0: linear factors t1, s1 (three real lines)";
    } else if (std::abs(a[0] + a[2] - a[1] - a[3]) <= tol) {
        out.reducible = true;
        out.mechanism = "r01 = 0: bilinear split (conic plus line)";
    } else {
        out.mechanism = "no linear factor (r00, r11 > 0); quadratic split obstructed (r01 > 0)";
    }
    return out;
}

FocalCurve focal_curve(const std::array<Mat3, 3>& basis, int n, std::uint64_t seed) {
    double scale = 0;
    for (const auto& b : basis) scale = std::max(scale, frobenius_norm(b));
    auto member = [&](const Vec3& x) {
        return basis[0] * x[0].real() + basis[1] * x[1].real() + basis[2] * x[2].real();
    };
    const CubicC det_cubic = interpolate_cubic([&](double x1, double x2, double x3) {
        return det(basis[0] * x1 + basis[1] * x2 + basis[2] * x3);
    });

    FocalCurve out{};
    Rng rng(0xF0C5ULL ^ seed);
    int guard = 0;
    while (int(out.ew_points.size()) < n && guard++ < 40 * n) {
        const Vec3 u{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const Vec3 v{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const auto coeffs = restrict_to_line(det_cubic, u, v);
        auto roots = poly_roots({coeffs[0], coeffs[1], coeffs[2], coeffs[3]});
        for (const auto& root : roots) {
            if (std::abs(root.imag()) > 1e-9 * (1.0 + std::abs(root))) continue;
            Vec3 x = u + root.real() * v;
            const double xn = std::sqrt(std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]));
            if (xn < 1e-10) continue;
            x = x / xn;
            const Mat3 h = member(x);
            const RankKernel rk = rank_kernel(h, 1e-7);
            if (rk.rank != 2) continue;  // rank-1 members are handled by the scan below
            out.ew_points.push_back(x);
            out.foci.push_back(ProjectivePoint::from(rk.kernel.front()));
            if (int(out.ew_points.size()) >= n) break;
        }
    }
    if (int(out.ew_points.size()) < n)
        fail(Err::IllConditioned, "could not sample enough points of E_W");

    // genericity: distinct E_W points sharing one focus signal a confocal line
    for (std::size_t i = 0; i < out.foci.size(); ++i)
        for (std::size_t j = i + 1; j < out.foci.size(); ++j) {
            const double dx = std::abs(dot_euclid(out.ew_points[i], out.ew_points[j]));
            if (dx > 1.0 - 1e-8) continue;  // same member of the pencil
            if (out.foci[i].same_as(out.foci[j]))
                fail(Err::NonGenericFamily, "distinct members share a focus (confocal line in E_W)");
        }
    // line-plus-point: all real members of E_W collinear in the coefficient plane
    {
        CMat pts(out.ew_points.size(), 3);
        for (std::size_t i = 0; i < out.ew_points.size(); ++i)
            for (int k = 0; k < 3; ++k) pts(i, k) = out.ew_points[i][k];
        Svd<Complex> s = svd_any(pts);
        if (out.ew_points.size() >= 6 && s.sigma[2] < 1e-8 * s.sigma[0])
            fail(Err::NonGenericFamily, "real members are collinear (line plus point)");
    }

    // fit one complex cubic through the foci
    CMat sys(out.foci.size(), 10);
    for (std::size_t i = 0; i < out.foci.size(); ++i) {
        const Vec3& f = out.foci[i].rep();
        for (int mono = 0; mono < 10; ++mono) {
            Complex term = 1.0;
            for (int v = 0; v < 3; ++v)
                for (int e = 0; e < kCubicMonomials[mono][v]; ++e) term *= f[v];
            sys(i, mono) = term;
        }
    }
    Svd<Complex> s = svd_any(sys);
    for (int mono = 0; mono < 10; ++mono) out.fitted.c[mono] = s.v(mono, 9);
    out.fitted = out.fitted.normalized();
    out.max_residual = 0.0;
    for (const auto& f : out.foci)
        out.max_residual = std::max(out.max_residual,
                                    std::abs(out.fitted.eval(f.rep()[0], f.rep()[1], f.rep()[2])));
    return out;
}

FocalCurve focal_curve(const EquitantFamily& fam, int n, std::uint64_t seed) {
    return focal_curve(fam.basis(), n, seed);
}

RealnessWitness realness_witness(const EquitantFamily& fam) {
    RealnessWitness out{};
    for (int j = 1; j <= 3; ++j) {
        const Mat3 h = fam.w()[0] - fam.w()[j];
        const RankKernel rk = rank_kernel(h, 1e-8);
        if (rk.rank != 2 || rk.kernel.empty())
            fail(Err::IllConditioned, "witness bisector is not rank 2");
        out.foci[j - 1] = ProjectivePoint::from(rk.kernel.front());
        out.orthogonality_residual[j - 1] = std::abs(inner(out.foci[j - 1].rep(), fam.points()[0]));
    }
    // the polar line of p1 must not be a component of the focal cubic E
    const FocalCurve fc = focal_curve(fam, 30);
    const Vec3 lform = standard_form().j * equiloci::conj(fam.points()[0]);
    out.line_division_residual = divide_by_line(fc.fitted, lform).residual;
    return out;
}

RecoveredFamily recover_family(const std::vector<ProjectivePoint>& samples) {
    if (samples.size() < 9) fail(Err::InsufficientSamples, "recovery needs at least 9 base samples");
    std::vector<Vec3> reps;
    reps.reserve(samples.size());
    for (const auto& q : samples) reps.push_back(q.rep());
    const VanishingFamily vf = solve_vanishing_family(reps, /*traceless=*/false, 1e-6);
    if (vf.dim != 3)
        fail(Err::UnexpectedDimension,
             "solution space has dimension " + std::to_string(vf.dim) + ", expected 3");
    RecoveredFamily out;
    out.basis = vf.basis;
    out.sigmas = vf.sigmas;
    out.max_trace = 0;
    for (const auto& h : out.basis) out.max_trace = std::max(out.max_trace, std::abs(trace(h)));
    return out;
}

TangencyReport pencil_tangency(const EquitantFamily& fam, const Mat3& h, const Mat3& hprime) {
    (void)fam;
    TangencyReport out{};
    try {
        out.pencil = giraud_pencil(h, hprime);
    } catch (const MathError& e) {
        if (e.code() == Err::IsLinearFamily)
            fail(Err::SpanIsLinearFamily, "the two members span a line of bisectors");
        throw;
    }

    if (out.pencil.has_double_root) {
        out.first_alternative = false;
        // locate the double root at one of the members: (1:0) is h, (0:1) is hprime
        for (const auto& rt : out.pencil.roots) {
            if (rt.multiplicity < 2) continue;
            out.double_at_second = std::abs(rt.x) < std::abs(rt.y);
        }
        return out;
    }

    out.first_alternative = true;
    const BisectorMap bh = BisectorMap::from_matrix(h);
    const BisectorMap bhp = BisectorMap::from_matrix(hprime);
    // p2 is polar to the line joining the two foci (the spine-of-one meets spine-of-other
    // cases are exactly the double-root branch handled above)
    const Vec3 p2raw = cross_bilinear(standard_form().j * equiloci::conj(bh.focus().rep()),
                                      standard_form().j * equiloci::conj(bhp.focus().rep()));
    const auto p2 = ProjectivePoint::from(p2raw);
    const SpineReflection r1 = reflect_in_spine(bh, p2);
    const SpineReflection r2 = reflect_in_spine(bhp, p2);
    out.points = {r1.c2, p2, r2.c2};
    out.decomposition_residual = std::max(r1.residual, r2.residual);
    return out;
}

EquitantFamily equitant_instance(const std::array<double, 4>& a_target, std::uint64_t seed,
                                 bool require_ball) {
    std::array<double, 4> a = a_target;
    std::sort(a.begin(), a.end(), std::greater<double>());
    const std::array<double, 3> atil{a[0] / a[3], a[1] / a[3], a[2] / a[3]};
    Rng rng(0xE0717A57ULL ^ seed);

    for (int attempt = 0; attempt < 640; ++attempt) {
        // seeded phases eta_i and clustered directions u_i; the fourth point
        // p4 = -sum atil_i eta_i (sinh t u_i, cosh t) must normalize to <p4,p4> = -1:
        // g(t) = B^2 sinh^2 t - A^2 cosh^2 t + 1 with A = |sum atil eta|,
        // B = |sum atil eta u| crosses zero iff A > 1 and B > A.
        std::array<Complex, 3> eta;
        for (auto& e : eta) e = std::exp(I * rng.uniform(0.0, 2.0 * M_PI));
        Complex asum = 0;
        for (int i = 0; i < 3; ++i) asum += atil[i] * eta[i];
        const double A = std::abs(asum);
        if (A <= 1.02) continue;

        std::array<std::array<Complex, 2>, 3> u{};
        {
            const Complex c0 = rng.gaussian_complex(), c1 = rng.gaussian_complex();
            const double n0 = std::sqrt(std::norm(c0) + std::norm(c1));
            const std::array<Complex, 2> u0{c0 / n0, c1 / n0};
            for (auto& ui : u) {
                Complex w0 = u0[0] + 0.25 * rng.gaussian_complex();
                Complex w1 = u0[1] + 0.25 * rng.gaussian_complex();
                const double n = std::sqrt(std::norm(w0) + std::norm(w1));
                ui = {w0 / n, w1 / n};
            }
        }
        Complex b0 = 0, b1 = 0;
        for (int i = 0; i < 3; ++i) {
            b0 += atil[i] * eta[i] * u[i][0];
            b1 += atil[i] * eta[i] * u[i][1];
        }
        const double B = std::sqrt(std::norm(b0) + std::norm(b1));
        if (B <= A * 1.001) continue;

        auto points_at = [&](double t) {
            std::array<Vec3, 4> p{};
            for (int i = 0; i < 3; ++i)
                p[i] = eta[i] * Vec3{std::sinh(t) * u[i][0], std::sinh(t) * u[i][1], std::cosh(t)};
            Vec3 fourth{};
            for (int i = 0; i < 3; ++i) fourth = fourth - atil[i] * p[i];
            p[3] = fourth;
            return p;
        };
        auto g = [&](double t) {
            const auto p = points_at(t);
            return std::real(inner(p[3], p[3])) + 1.0;
        };
        double lo = 0.0, hi = 2.5;
        if (!(g(lo) < 0)) continue;
        bool bracketed = false;
        for (int it = 0; it < 12 && !bracketed; ++it) {
            if (g(hi) > 0) bracketed = true;
            else hi *= 1.4;
        }
        if (!bracketed) continue;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) < 0 ? lo : hi) = mid;
        }
        auto pts = points_at(0.5 * (lo + hi));
        pts[3] = pts[3] / std::sqrt(std::abs(std::real(inner(pts[3], pts[3]))));
        try {
            const EquitantFamily fam = EquitantFamily::make(pts, SignTag::Negative);
            double worst = 0;
            for (int i = 0; i < 4; ++i)
                worst = std::max(worst, std::abs(fam.a()[i] - a[i] / a[3]));
            if (worst > 1e-6 * a[0]) continue;
            if (require_ball) {
                // callers exercising distances need the base to meet the ball; on the
                // nodal-asymmetric stratum this is provably impossible (the closure
                // forces p2 = -p1), so it stays an opt-in filter
                bool ball = false;
                for (int density : {48, 160}) {
                    const TraceResult tr = trace_base(fam, density);
                    for (const auto& tp : tr.points)
                        if (tp.signature == SignTag::Negative) ball = true;
                    if (ball) break;
                }
                if (!ball) continue;
            }
            return fam;
        } catch (const MathError&) {
            continue;
        }
    }
    fail(Err::IllConditioned, "no instance realized the requested dependence");
}

std::array<double, 4> case_target(EquitantTag tag, Rng& rng) {
    switch (tag) {
        case EquitantTag::ThreeLines:
            return {1, 1, 1, 1};
        case EquitantTag::ConicPlusLine: {
            const double hi = rng.uniform(1.05, 1.6), lo = rng.uniform(0.6, 0.95);
            return {hi, hi, lo, lo};
        }
        case EquitantTag::NodalSymmetric: {
            const double a2 = rng.uniform(0.9, 1.2), a3 = rng.uniform(0.7, 0.89);
            const double delta = rng.uniform(0.05, 0.8) * (a3 - 0.4);
            return {a2 + delta, a2, a3, a3 - delta};  // a1 + a4 = a2 + a3
        }
        case EquitantTag::NodalAsymmetric: {
            const double a2 = rng.uniform(0.8, 1.1), a3 = rng.uniform(0.5, 0.79),
                         a4 = rng.uniform(0.2, 0.49);
            return {a2 + a3 + a4, a2, a3, a4};
        }
        case EquitantTag::Smooth: {
            for (;;) {
                std::array<double, 4> a{rng.uniform(1.0, 2.0), rng.uniform(0.8, 1.0),
                                        rng.uniform(0.55, 0.79), rng.uniform(0.3, 0.54)};
                const double margin = 0.02;
                if (std::abs(a[0] + a[3] - a[1] - a[2]) < margin) continue;
                if (std::abs(a[0] - a[1]) < margin || std::abs(a[2] - a[3]) < margin) continue;
                // stay inside the quadrilateral inequality: a base ball point forces
                // the closure sum a_i zeta_i = 0, which needs a1 <= a2+a3+a4
                if (a[1] + a[2] + a[3] - a[0] < 0.05) continue;
                return a;
            }
        }
    }
    return {1, 1, 1, 1};
}

}  // namespace equiloci
