#include "doctest.h"

#include <cmath>

#include "equiloci/linear_family.hpp"

using namespace equiloci;

namespace {

Mat3 raw_bisector(const Vec3& p1, const Vec3& p2) {
    const Mat3 w1 = outer(p1, p1) * standard_form().j;
    const Mat3 w2 = outer(p2, p2) * standard_form().j;
    return w1 * (1.0 / inner(p1, p1).real()) - w2 * (1.0 / inner(p2, p2).real());
}

std::vector<Vec3> slice_samples(const Vec3& u1, const Vec3& u2, int n, Rng& rng) {
    std::vector<Vec3> out;
    for (int i = 0; i < n; ++i) out.push_back(u1 * rng.gaussian_complex() + u2 * rng.gaussian_complex());
    return out;
}

// witness constructions, all through the vanishing-system solver

LinearFamily confocal_line(const Vec3& f0, const Vec3& s_other, const Vec3& sp_other, Rng& rng) {
    // S = span(f0, s_other), S' = span(f0, sp_other)
    auto pts = slice_samples(f0, s_other, 12, rng);
    auto more = slice_samples(f0, sp_other, 12, rng);
    pts.insert(pts.end(), more.begin(), more.end());
    const VanishingFamily vf = solve_vanishing_family(pts, true);
    REQUIRE(vf.dim == 2);
    return LinearFamily::from_basis(vf.basis);
}

LinearFamily confocal_negative3() {
    // all self-adjoint traceless maps killing e3: the 2x2 Hermitian traceless block
    Mat3 h1 = Mat3::diag(1, -1, 0);
    Mat3 h2 = Mat3::zero();
    h2(0, 1) = 1;
    h2(1, 0) = 1;
    Mat3 h3 = Mat3::zero();
    h3(0, 1) = I;
    h3(1, 0) = -I;
    return LinearFamily::from_basis({h1, h2, h3});
}

LinearFamily rplane_family(Rng& rng) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 24; ++i) pts.push_back(Vec3{rng.gaussian(), rng.gaussian(), rng.gaussian()});
    const VanishingFamily vf = solve_vanishing_family(pts, true);
    REQUIRE(vf.dim == 3);
    return LinearFamily::from_basis(vf.basis);
}

LinearFamily maximal_ws(Rng& rng) {
    // S = P span(e1, e3), polar point e2
    auto pts = slice_samples({1, 0, 0}, {0, 0, 1}, 20, rng);
    pts.push_back({0, 1, 0});
    const VanishingFamily vf = solve_vanishing_family(pts, true);
    REQUIRE(vf.dim == 4);
    return LinearFamily::from_basis(vf.basis);
}

LinearFamily slice_geodesic_family(Rng& rng) {
    // S = P span(e1, e3) with polar e2 (non-isotropic), Gamma = R-span(e2, e3)
    auto pts = slice_samples({1, 0, 0}, {0, 0, 1}, 16, rng);
    for (int i = 0; i < 10; ++i)
        pts.push_back(Vec3{0, rng.gaussian(), rng.gaussian()});
    const VanishingFamily vf = solve_vanishing_family(pts, true);
    REQUIRE(vf.dim == 3);
    return LinearFamily::from_basis(vf.basis);
}

LinearFamily euclidean_focus_family(Rng& rng) {
    // Gamma = hyperbolic geodesic with isotropic vertex f0; S' = P(f0 perp)
    const double r = 1.0 / std::sqrt(2.0);
    const Vec3 f0{r, 0, r}, g0{r, 0, -r};
    std::vector<Vec3> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(f0 * rng.gaussian() + g0 * rng.gaussian());
    auto sp = slice_samples(f0, {0, 1, 0}, 16, rng);
    pts.insert(pts.end(), sp.begin(), sp.end());
    const VanishingFamily vf = solve_vanishing_family(pts, true);
    REQUIRE(vf.dim == 3);
    return LinearFamily::from_basis(vf.basis);
}

LinearFamily nonconfocal_line() {
    // members i J Y for two real skew Y's vanishing on S = P span(e1, e3)
    Mat3 ya = Mat3::zero();
    ya(0, 1) = 1;
    ya(1, 0) = -1;
    Mat3 yc = Mat3::zero();
    yc(1, 2) = 1;
    yc(2, 1) = -1;
    const Mat3 j = standard_form().j;
    return LinearFamily::from_basis({I * (j * ya), I * (j * yc)});
}

}  // namespace

TEST_CASE("is_linear_family: collinear triples yes, generic triples no") {
    // three distinct points on one complex line share the slice polar to that line
    const Vec3 a{0.1, 0, 1.0}, b{0.5, 0, 1.0};
    const Vec3 c = a + 0.7 * b;
    const Mat3 h12 = raw_bisector(a, b), h23 = raw_bisector(b, c);
    const LinearFamilyCheck yes = is_linear_family({h12, h23});
    CHECK(yes.linear);

    Rng rng(2);
    const Vec3 p1 = random_negative_point(rng).rep();
    const Vec3 p2 = random_negative_point(rng).rep();
    const Vec3 p3 = random_negative_point(rng).rep();
    const LinearFamilyCheck no = is_linear_family({raw_bisector(p1, p2), raw_bisector(p2, p3)});
    CHECK_FALSE(no.linear);
    CHECK(no.form.max_abs() > 1e-4);

    const Mat3 h = raw_bisector(p1, p2);
    CHECK_THROWS_AS((void)is_linear_family({h, h * 2.0}), MathError);
}

TEST_CASE("transversality at common points") {
    Rng rng(5);
    // two bisectors from three generic points, at a generic common point
    const Vec3 p1 = random_negative_point(rng).rep();
    const Vec3 p2 = random_negative_point(rng).rep();
    const Vec3 p3 = random_negative_point(rng).rep();
    const Mat3 h12 = raw_bisector(p1, p2), h23 = raw_bisector(p2, p3);
    int found = 0;
    for (int i = 0; i < 20 && found < 5; ++i) {
        auto q = project_to_base({h12, h23}, rng.gaussian_vec3());
        if (!q) continue;
        const auto qp = ProjectivePoint::from(*q);
        if (point_signature(qp).tag == SignTag::Isotropic) continue;
        CHECK(transversal_at({h12, h23}, qp));
        ++found;
    }
    CHECK(found == 5);

    // at the common focus of a confocal family the stacked map dies
    const LinearFamily cf3 = confocal_negative3();
    CHECK_FALSE(transversal_at(cf3.basis(), ProjectivePoint::from({0, 0, 1})));

    // five maps that all vanish at one point cannot be transversal there
    std::vector<Mat3> five = cf3.basis();
    {
        std::vector<Vec3> pt{Vec3{0, 0, 1}};
        const VanishingFamily vf = solve_vanishing_family(pt, true);
        REQUIRE(vf.dim == 7);
        five.push_back(vf.basis[0]);
        five.push_back(vf.basis[1]);
        RMat span = realify_matrix_span(five);
        Svd<double> s = svd_any(span);
        if (s.sigma[4] < 1e-6) {  // ensure independence of the assembled five
            five.pop_back();
            five.push_back(vf.basis[2]);
        }
    }
    CHECK_FALSE(transversal_at(five, ProjectivePoint::from({0, 0, 1})));

    CHECK_THROWS_AS((void)transversal_at({h12}, ProjectivePoint::from({1, 0, 1})), MathError);
    CHECK_THROWS_AS((void)transversal_at({h12}, ProjectivePoint::from({0, 1, 0})), MathError);
}

TEST_CASE("rank-one elements: degenerate W_U has them, nondegenerate has none") {
    Rng rng(7);
    const double r = 1.0 / std::sqrt(2.0);
    const Vec3 f0{r, 0, r};
    // degenerate U = f0 perp contains f0 itself
    std::vector<Vec3> pts = slice_samples(f0, {0, 1, 0}, 20, rng);
    const VanishingFamily vf = solve_vanishing_family(pts, true);
    REQUIRE(vf.dim == 4);
    const LinearFamily wu = LinearFamily::from_basis(vf.basis);
    const auto ones = rank1_elements(wu);
    REQUIRE(ones.size() >= 1);
    bool hit = false;
    for (const auto& el : ones)
        if (el.f0.same_as(ProjectivePoint::from(f0))) hit = true;
    CHECK(hit);
    for (const auto& el : ones)
        CHECK(std::abs(point_signature(el.f0).value) < 1e-5);

    // nondegenerate U: every nonzero element has rank 2
    Rng rng2(8);
    const LinearFamily ws = maximal_ws(rng2);
    CHECK(rank1_elements(ws).empty());

    // confocal line with positive focus
    Rng rng3(9);
    const LinearFamily cl = confocal_line({1, 0, 0}, {0, 0, 1}, {0, 1, 0}, rng3);
    CHECK(rank1_elements(cl).empty());
}

TEST_CASE("focal embedding: defining identity, uniqueness, image geometry") {
    Rng rng(11);
    const LinearFamily rp = rplane_family(rng);
    const FocalEmbedding fe = focal_embedding(rp);
    CHECK(fe.max_defect < 1e-9);
    // totally real image span: Gram matrix of the images is real
    for (const auto& u : fe.images)
        for (const auto& v : fe.images)
            CHECK(std::abs(inner(u, v).imag()) < 1e-8);

    // uniqueness up to one complex scalar across seeded gauges
    const FocalEmbedding f2 = focal_embedding(rp, 1234);
    Complex num = 0, den = 0;
    for (std::size_t i = 0; i < fe.images.size(); ++i) {
        num += dot_euclid(f2.images[i], fe.images[i]);
        den += dot_euclid(fe.images[i], fe.images[i]);
    }
    const Complex alpha = num / den;
    double worst = 0;
    for (std::size_t i = 0; i < fe.images.size(); ++i)
        worst = std::max(worst, norm_euclid(f2.images[i] - alpha * fe.images[i]));
    CHECK(worst < 1e-7);

    // nonconfocal line: images span a complex line U and the family lands in W_U
    const LinearFamily nl = nonconfocal_line();
    const FocalEmbedding fl = focal_embedding(nl);
    CMat imgs(3, 2);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 3; ++k) imgs(k, j) = fl.images[j][k];
    CHECK(numeric_rank(imgs, 1e-7) == 2);
    for (const auto& h : nl.basis())
        for (const auto& u : fl.images)
            for (const auto& v : fl.images)
                CHECK(std::abs(inner(h * u, v)) < 1e-8);

    // confocal families have no focal embedding
    CHECK_THROWS_AS((void)focal_embedding(confocal_negative3()), MathError);
}

TEST_CASE("classification covers the constructible taxonomy") {
    Rng rng(13);
    const LinearFamily cl = confocal_line({0, 0, 1}, {1, 0, 0}, {0, 1, 0}, rng);
    const FamilyClass c1 = classify_family(cl);
    CHECK(c1.tag == FamilyTag::ConfocalLine);
    REQUIRE(c1.common_focus.has_value());
    CHECK(c1.common_focus->same_as(ProjectivePoint::from({0, 0, 1})));

    // positive-focus confocal line is still a confocal line
    Rng rngp(29);
    const FamilyClass c1p = classify_family(confocal_line({1, 0, 0}, {0, 0, 1}, {0, 1, 0}, rngp));
    CHECK(c1p.tag == FamilyTag::ConfocalLine);

    const FamilyClass c2 = classify_family(confocal_negative3());
    CHECK(c2.tag == FamilyTag::ConfocalNegative3);

    Rng rng3(17);
    const FamilyClass c3 = classify_family(rplane_family(rng3));
    CHECK(c3.tag == FamilyTag::RPlaneFamily);

    Rng rng4(19);
    const FamilyClass c4 = classify_family(maximal_ws(rng4));
    CHECK(c4.tag == FamilyTag::MaximalNonconfocalWS);
    REQUIRE(c4.slice_polar.has_value());
    CHECK(c4.slice_polar->same_as(ProjectivePoint::from({0, 1, 0})));

    Rng rng5(23);
    const FamilyClass c5 = classify_family(slice_geodesic_family(rng5));
    CHECK(c5.tag == FamilyTag::SliceGeodesicFamily);

    Rng rng6(27);
    const FamilyClass c6 = classify_family(euclidean_focus_family(rng6));
    CHECK(c6.tag == FamilyTag::EuclideanFocusFamily);

    const FamilyClass c7 = classify_family(nonconfocal_line());
    CHECK(c7.tag == FamilyTag::NonconfocalLine);
    REQUIRE(c7.cone_basis.size() == 3);
    // the cone here is the standard real plane
    for (const auto& u : c7.cone_basis)
        for (const auto& v : c7.cone_basis)
            CHECK(std::abs(inner(u, v).imag()) < 1e-8);
}

TEST_CASE("base sampling matches the known base structure") {
    Rng rng(31);
    const LinearFamily cl = confocal_line({0, 0, 1}, {1, 0, 0}, {0, 1, 0}, rng);
    // base = S union S': S = span(e3,e1) polar e2; S' = span(e3,e2) polar e1
    const Vec3 polarS{0, 1, 0}, polarSp{1, 0, 0};
    for (const auto& q : base_sample(cl, 30, 5)) {
        const double d1 = std::abs(inner(q.rep(), polarS));
        const double d2 = std::abs(inner(q.rep(), polarSp));
        CHECK(std::min(d1, d2) < 1e-8);
    }

    Rng rng2(33);
    const LinearFamily rp = rplane_family(rng2);
    const FamilyClass crp = classify_family(rp);
    for (const auto& q : base_sample(rp, 30, 6))
        CHECK(on_real_span(crp.rplane_basis, q.rep(), 1e-6));

    const LinearFamily nl = nonconfocal_line();
    const FamilyClass cnl = classify_family(nl);
    int on_slice = 0, on_cone = 0;
    for (const auto& q : base_sample(nl, 40, 7)) {
        const bool slice = std::abs(inner(q.rep(), Vec3{0, 1, 0})) < 1e-7;
        const bool cone = on_real_span(cnl.cone_basis, q.rep(), 1e-6);
        CHECK((slice || cone));
        if (slice) ++on_slice;
        if (cone) ++on_cone;
    }
    CHECK(on_slice > 0);
    CHECK(on_cone > 0);
}

TEST_CASE("prop-style recovery: the base determines the family") {
    Rng rng(37);
    const std::vector<LinearFamily> fams{
        confocal_line({0, 0, 1}, {1, 0, 0}, {0, 1, 0}, rng),
        rplane_family(rng),
        maximal_ws(rng),
        slice_geodesic_family(rng),
        euclidean_focus_family(rng),
        nonconfocal_line(),
    };
    std::uint64_t seed = 11;
    for (const auto& fam : fams) {
        const auto samples = base_sample(fam, 200, seed++);
        std::vector<Vec3> reps;
        for (const auto& q : samples) reps.push_back(q.rep());
        const VanishingFamily rec = solve_vanishing_family(reps, true);
        REQUIRE(rec.dim == fam.dim());
        CHECK(matrix_span_max_angle(rec.basis, fam.basis()) < 1e-6);
    }
}

TEST_CASE("giraud pencil: telescoping roots and the double-root alternative") {
    Rng rng(41);
    const Vec3 p1 = random_negative_point(rng).rep();
    const Vec3 p2 = random_negative_point(rng).rep();
    const Vec3 p3 = random_negative_point(rng).rep();
    const Mat3 h12 = raw_bisector(p1, p2), h23 = raw_bisector(p2, p3), h13 = raw_bisector(p1, p3);

    // telescoping: h12 + h23 = h13 exactly
    CHECK(frobenius_norm(h12 + h23 - h13) < 1e-14);

    const PencilReport rep = giraud_pencil(h12, h23);
    REQUIRE(rep.roots.size() == 3);
    CHECK_FALSE(rep.has_double_root);
    // roots are exactly (1:0), (0:1), (1:1) as projective classes
    int hits = 0;
    for (const auto& r : rep.roots) {
        CHECK(r.multiplicity == 1);
        if (std::abs(r.y) < 1e-7) ++hits;                            // (1:0)
        if (std::abs(r.x) < 1e-7) ++hits;                            // (0:1)
        if (std::abs(r.x - r.y) < 1e-7 * std::abs(r.x + r.y)) ++hits;  // (1:1)
        // each root reproduces one of the three bisector maps up to real scale
        const Mat3 member = r.member * (1.0 / frobenius_norm(r.member));
        double best = 1e9;
        for (const Mat3& target : {h12, h23, h13}) {
            const Mat3 t = target * (1.0 / frobenius_norm(target));
            best = std::min({best, frobenius_norm(member - t), frobenius_norm(member + t)});
        }
        CHECK(best < 1e-8);
    }
    CHECK(hits == 3);

    // focus-on-bisector pair: det(x h + y h') = r x^2 y pattern
    const Vec3 q1{1, 0, 0}, q2{0, 0, 1}, q3{1.0, 1.0, 2.0};
    const Geodesic g = Geodesic::through(q1, q2);
    const BisectorMap bh = bisector_from_spine(g);
    const Mat3 hprime = raw_bisector(q2, q3);
    const PencilReport dd = giraud_pencil(bh.h(), hprime);
    CHECK(dd.has_double_root);

    // a pair spanning a linear family is rejected
    const Vec3 a{0.1, 0, 1.0}, b{0.5, 0, 1.0};
    const Vec3 c = a + 0.7 * b;
    CHECK_THROWS_AS((void)giraud_pencil(raw_bisector(a, b), raw_bisector(b, c)), MathError);
}

TEST_CASE("giraud count on random triples") {
    Rng rng(47);
    int done = 0;
    for (int i = 0; i < 80 && done < 50; ++i) {
        const Vec3 p1 = random_negative_point(rng).rep();
        const Vec3 p2 = random_negative_point(rng).rep();
        const Vec3 p3 = random_negative_point(rng).rep();
        const Mat3 m = outer(p1, p1);  // cheap collinearity guard below
        (void)m;
        const Complex d = det(Mat3{} + outer(p1, p1) * 0.0 +
                              [&] {
                                  Mat3 cols;
                                  for (int k = 0; k < 3; ++k) {
                                      cols(k, 0) = p1[k];
                                      cols(k, 1) = p2[k];
                                      cols(k, 2) = p3[k];
                                  }
                                  return cols;
                              }());
        if (std::abs(d) < 1e-3) continue;
        const PencilReport rep = giraud_pencil(raw_bisector(p1, p2), raw_bisector(p2, p3));
        CHECK(rep.roots.size() == 3);
        ++done;
    }
    CHECK(done == 50);
}

TEST_CASE("nontransversal diagnosis at the singular circle") {
    Rng rng(53);
    // three points near the chart center: their equidistant locus crosses the ball,
    // so ball-interior common points are easy to project onto from seeds near e3
    auto near_center = [&]() {
        const double t = 0.8, a = rng.uniform(0.0, 2 * M_PI), b = rng.uniform(0.0, 2 * M_PI);
        return Vec3{std::sinh(t) * std::cos(a) * std::exp(I * b),
                    std::sinh(t) * std::sin(a), std::cosh(t)};
    };
    const Vec3 p1 = near_center(), p2 = near_center(), p3 = near_center();
    const BisectorMap b12 = bisector_from_points(ProjectivePoint::from(p1), ProjectivePoint::from(p2));
    const BisectorMap b23 = bisector_from_points(ProjectivePoint::from(p2), ProjectivePoint::from(p3));
    int found = 0;
    for (int i = 0; i < 60 && found < 3; ++i) {
        const Vec3 seed = Vec3{0.3 * rng.gaussian_complex(), 0.3 * rng.gaussian_complex(), 1.0};
        auto q = project_to_base({b12.h(), b23.h()}, seed);
        if (!q) continue;
        const auto qp = ProjectivePoint::from(*q);
        if (point_signature(qp).tag != SignTag::Negative) continue;
        if (qp.same_as(b12.focus()) || qp.same_as(b23.focus())) continue;
        const auto diag = nontransversal_diagnosis(b12, b23, qp);
        CHECK(diag.transversal);
        ++found;
    }
    CHECK(found == 3);

    // pair inside a nonconfocal line, probed on the singular circle
    const LinearFamily nl = nonconfocal_line();
    const BisectorMap m1 = BisectorMap::from_matrix(nl.basis()[0]);
    const BisectorMap m2 = BisectorMap::from_matrix(nl.basis()[1]);
    const auto p = ProjectivePoint::from({1.0, 0, 2.0});
    const auto diag = nontransversal_diagnosis(m1, m2, p);
    CHECK_FALSE(diag.transversal);
    REQUIRE(diag.line.has_value());
    CHECK(diag.circle_residual == 0.0);

    CHECK_THROWS_AS((void)nontransversal_diagnosis(m1, m2, m1.focus()), MathError);
}

TEST_CASE("third bisectors through a patch of a generic intersection stay in the span") {
    Rng rng(59);
    const Vec3 p1 = random_negative_point(rng).rep();
    const Vec3 p2 = random_negative_point(rng).rep();
    const Vec3 p3 = random_negative_point(rng).rep();
    const Mat3 h12 = raw_bisector(p1, p2), h23 = raw_bisector(p2, p3);
    std::vector<Vec3> samples;
    for (int i = 0; i < 200 && samples.size() < 30; ++i) {
        if (auto q = project_to_base({h12, h23}, rng.gaussian_vec3())) samples.push_back(*q);
    }
    REQUIRE(samples.size() == 30);
    const VanishingFamily fit = solve_vanishing_family(samples, true);
    REQUIRE(fit.dim == 2);
    CHECK(matrix_span_max_angle(fit.basis, {h12, h23}) < 1e-7);
}

TEST_CASE("transversality caps on witness families") {
    // R-plane family: no 3 members transversal at non-isotropic base points
    Rng rng(61);
    const LinearFamily rp = rplane_family(rng);
    for (int i = 0; i < 5; ++i) {
        Vec3 x{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const auto p = ProjectivePoint::from(x);
        if (point_signature(p).tag == SignTag::Isotropic) continue;
        CHECK_FALSE(transversal_at(rp.basis(), p));
    }

    // W_S: no 4 transversal on S minus the isotropics; any spanning 4 transversal at p
    Rng rng2(67);
    const LinearFamily ws = maximal_ws(rng2);
    for (int i = 0; i < 5; ++i) {
        const Vec3 s = Vec3{1, 0, 0} * rng2.gaussian_complex() + Vec3{0, 0, 1} * rng2.gaussian_complex();
        const auto sp = ProjectivePoint::from(s);
        if (point_signature(sp).tag == SignTag::Isotropic) continue;
        CHECK_FALSE(transversal_at(ws.basis(), sp));
    }
    CHECK(transversal_at(ws.basis(), ProjectivePoint::from({0, 1, 0})));
}
