#include "doctest.h"

#include <cmath>

#include "equiloci/hermitian.hpp"

using namespace equiloci;

namespace {

// rank-one projector map <-, p> p / <p,p>, assembled independently of the bisector module
Mat3 projector(const Vec3& p) {
    const Mat3 w = outer(p, p) * standard_form().j;
    return w * (1.0 / inner(p, p).real());
}

}  // namespace

TEST_CASE("inner product matches the signature ++- chart") {
    const Vec3 e3{0, 0, 1};
    const Vec3 e1{1, 0, 0};
    CHECK(inner(e3, e3).real() == doctest::Approx(-1.0));
    CHECK(std::abs(inner(e1, e3)) == doctest::Approx(0.0));
    const Vec3 q{std::sinh(1.0), 0, std::cosh(1.0)};
    CHECK(inner(q, e3).real() == doctest::Approx(-std::cosh(1.0)).epsilon(1e-12));
    CHECK(inner(q, e3).imag() == doctest::Approx(0.0));
}

TEST_CASE("conjugate symmetry of the form") {
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const Vec3 u = rng.gaussian_vec3(), v = rng.gaussian_vec3();
        const Complex a = inner(u, v), b = std::conj(inner(v, u));
        CHECK(std::abs(a - b) < 1e-14 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("point signatures") {
    CHECK(point_signature(ProjectivePoint::from({0, 0, 1})).tag == SignTag::Negative);
    CHECK(point_signature(ProjectivePoint::from({1, 0, 0})).tag == SignTag::Positive);
    CHECK(point_signature(ProjectivePoint::from({1, 0, 1})).tag == SignTag::Isotropic);
}

TEST_CASE("distance along a geodesic through the origin") {
    const auto center = ProjectivePoint::from({0, 0, 1});
    CHECK(distance(center, center) == doctest::Approx(0.0));
    const auto q = ProjectivePoint::from({std::sinh(1.0), 0, std::cosh(1.0)});
    CHECK(distance(center, q) == doctest::Approx(1.0).epsilon(1e-12));
    const auto pos = ProjectivePoint::from({1, 0, 0});
    CHECK_THROWS_AS((void)distance(center, pos), MathError);
}

TEST_CASE("distance is projectively invariant") {
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        const auto p = random_negative_point(rng);
        const auto q = random_negative_point(rng);
        const Complex lam = rng.gaussian_complex(), mu = rng.gaussian_complex();
        if (std::abs(lam) < 1e-3 || std::abs(mu) < 1e-3) continue;
        const auto ps = ProjectivePoint::from(p.rep() * lam);
        const auto qs = ProjectivePoint::from(q.rep() * mu);
        CHECK(std::abs(distance(p, q) - distance(ps, qs)) < 1e-10);
    }
}

TEST_CASE("adjoint definition and involution") {
    CHECK(frobenius_norm(adjoint(Mat3::identity()) - Mat3::identity()) < 1e-15);
    const Mat3 d = Mat3::diag(I, 0, 0);
    CHECK(frobenius_norm(adjoint(d) - Mat3::diag(-I, 0, 0)) < 1e-15);

    Rng rng(9);
    for (int round = 0; round < 10; ++round) {
        Mat3 h;
        for (auto& z : h.a) z = rng.gaussian_complex();
        const Mat3 hs = adjoint(h);
        for (int k = 0; k < 10; ++k) {
            const Vec3 x = rng.gaussian_vec3(), y = rng.gaussian_vec3();
            CHECK(std::abs(inner(h * x, y) - inner(x, hs * y)) <
                  1e-12 * frobenius_norm(h) * norm_euclid(x) * norm_euclid(y));
        }
        CHECK(frobenius_norm(adjoint(hs) - h) < 1e-12 * frobenius_norm(h));
    }
}

TEST_CASE("rank and kernel") {
    const RankKernel z = rank_kernel(Mat3::zero());
    CHECK(z.rank == 0);
    CHECK(z.kernel.size() == 3);

    const RankKernel d = rank_kernel(Mat3::diag(1, 1, 0));
    CHECK(d.rank == 2);
    REQUIRE(d.kernel.size() == 1);
    CHECK(std::abs(d.kernel[0][2]) == doctest::Approx(1.0));

    // bisector map of (0,0,1) vs (sinh 1, 0, cosh 1); kernel oracle from the adjugate
    const Vec3 p1{0, 0, 1}, p2{std::sinh(1.0), 0, std::cosh(1.0)};
    const Mat3 h = projector(p1) - projector(p2);
    const RankKernel rk = rank_kernel(h);
    CHECK(rk.rank == 2);
    REQUIRE(rk.kernel.size() == 1);
    const Mat3 adj = adjugate(h);
    Vec3 oracle = col(adj, 0);
    for (std::size_t j = 1; j < 3; ++j)
        if (norm_euclid(col(adj, j)) > norm_euclid(oracle)) oracle = col(adj, j);
    oracle = oracle / norm_euclid(oracle);
    CHECK(std::norm(dot_euclid(rk.kernel[0], oracle)) == doctest::Approx(1.0).epsilon(1e-18));
    CHECK(std::abs(rk.kernel[0][1]) == doctest::Approx(1.0).epsilon(1e-12));  // focus (0,1,0)
}

TEST_CASE("rank_kernel consistency on random rank-2 self-adjoint maps") {
    Rng rng(21);
    for (int i = 0; i < 40; ++i) {
        const auto p = random_negative_point(rng), q = random_negative_point(rng);
        if (p.same_as(q)) continue;
        const Mat3 h = projector(p.rep()) - projector(q.rep());
        const RankKernel rk = rank_kernel(h);
        REQUIRE(rk.rank == 2);
        const Vec3 hv = h * rk.kernel[0];
        CHECK(norm_euclid(hv) <= 1e-9 * frobenius_norm(h));
    }
}

TEST_CASE("eigen3 closed form") {
    const Eigen3 e = eigen3(Mat3::diag(2.0 * I, -2.0 * I, 0));
    CHECK(std::abs(e.values[0]) == doctest::Approx(2.0));
    CHECK(std::abs(e.values[1]) == doctest::Approx(2.0));
    CHECK(std::abs(e.values[2]) == doctest::Approx(0.0));
    CHECK(e.max_residual < 1e-12);

    Mat3 n;  // nilpotent: parabolic model in a Gram-antidiagonal basis
    n(1, 0) = 1;
    n(2, 1) = 1;
    const Eigen3 en = eigen3(n);
    for (const auto& v : en.values) CHECK(std::abs(v) < 1e-10);
    CHECK(frobenius_norm(n * n * n) < 1e-15);
    CHECK(en.max_residual < 1e-10 * frobenius_norm(n));
}

TEST_CASE("eigenvalues of traceless maps sum to zero") {
    Rng rng(33);
    for (int i = 0; i < 30; ++i) {
        std::array<double, 9> p{};
        for (auto& x : p) x = rng.gaussian();
        p[2] = p[0] + p[1];  // trace of J*H vanishes
        const Mat3 h = selfadjoint_from_hermitian(hermitian_from_params(p));
        REQUIRE(std::abs(trace(h)) < 1e-12);
        const Eigen3 e = eigen3(h);
        const Complex s = e.values[0] + e.values[1] + e.values[2];
        CHECK(std::abs(s) < 1e-10 * std::max(1.0, frobenius_norm(h)));
        CHECK(e.max_residual <= 1e-10 * frobenius_norm(h));
    }
}

TEST_CASE("projective normalization is idempotent and phase-free") {
    Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        const Vec3 v = rng.gaussian_vec3();
        const auto p = ProjectivePoint::from(v);
        const auto p2 = ProjectivePoint::from(p.rep());
        CHECK(norm_euclid(p.rep() - p2.rep()) < 1e-14);
        const Complex phase = std::exp(I * rng.uniform(0.0, 2 * M_PI));
        const auto q = ProjectivePoint::from(v * phase);
        CHECK(p.same_as(q));
    }
}

TEST_CASE("vanishing-family solver recovers the real-plane family") {
    // self-adjoint traceless maps vanishing on all real points: h = i J Y, Y real skew
    std::vector<Vec3> samples;
    Rng rng(2);
    for (int i = 0; i < 40; ++i)
        samples.push_back(Vec3{rng.gaussian(), rng.gaussian(), rng.gaussian()});
    const VanishingFamily fam = solve_vanishing_family(samples, true);
    CHECK(fam.dim == 3);
    for (const auto& h : fam.basis) {
        CHECK(std::abs(trace(h)) < 1e-10);
        CHECK(is_selfadjoint(h));
        CHECK(std::abs(det(h)) < 1e-10);
    }
}

TEST_CASE("form unitaries preserve the form") {
    Rng rng(8);
    for (int i = 0; i < 10; ++i) {
        const Mat3 g = random_form_unitary(rng);
        const Vec3 x = rng.gaussian_vec3(), y = rng.gaussian_vec3();
        CHECK(std::abs(inner(g * x, g * y) - inner(x, y)) <
              1e-11 * norm_euclid(x) * norm_euclid(y) * frobenius_norm(g) * frobenius_norm(g));
    }
}
