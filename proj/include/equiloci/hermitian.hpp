#pragma once

#include <array>
#include <vector>

#include "equiloci/complex3.hpp"
#include "equiloci/errors.hpp"
#include "equiloci/numeric.hpp"
#include "equiloci/rng.hpp"

namespace equiloci {

// Default tolerances of the chart diag(1,1,-1); see the module notes in the README.
inline constexpr double kTolSig = 1e-9;    // relative isotropy threshold
inline constexpr double kTolRank = 1e-9;   // relative singular-value threshold
inline constexpr double kTolMember = 1e-9; // relative bisector membership threshold

/// Hermitian form of signature ++- on V = C^3. Fixed to diag(1,1,-1); any other form of
/// that signature is handled by a user-side change of basis.
struct HermitianForm {
    Mat3 j = Mat3::diag(1.0, 1.0, -1.0);
};

inline const HermitianForm& standard_form() {
    static const HermitianForm f{};
    return f;
}

/// <u,v> = v^H J u: linear in the first argument, conjugate-linear in the second.
inline Complex inner(const Vec3& u, const Vec3& v, const HermitianForm& f = standard_form()) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        Complex ju = f.j(i, 0) * u[0] + f.j(i, 1) * u[1] + f.j(i, 2) * u[2];
        acc += std::conj(v[i]) * ju;
    }
    return acc;
}

enum class SignTag { Positive, Isotropic, Negative };

struct Signature {
    SignTag tag;
    double value;  // <p,p> for the normalized representative
};

const char* sign_name(SignTag t);

/// Point of the complex projective plane with a deterministic normalized representative:
/// unit Euclidean length, then the unit phase making the first coordinate of largest
/// modulus real positive.
class ProjectivePoint {
  public:
    ProjectivePoint() : rep_(1.0, 0.0, 0.0) {}
    static ProjectivePoint from(const Vec3& representative);

    const Vec3& rep() const { return rep_; }

    bool same_as(const ProjectivePoint& other) const;  // phase-free comparison

  private:
    explicit ProjectivePoint(const Vec3& normalized) : rep_(normalized) {}
    Vec3 rep_;
};

Signature point_signature(const ProjectivePoint& p, const HermitianForm& f = standard_form());

/// Hyperbolic distance between two negative points (arccosh of the cross-ratio root).
double distance(const ProjectivePoint& p1, const ProjectivePoint& p2,
                const HermitianForm& f = standard_form());

/// Adjoint with respect to the form: <h x, y> = <x, h* y>, i.e. h* = J^-1 h^H J.
Mat3 adjoint(const Mat3& h, const HermitianForm& f = standard_form());

inline bool is_selfadjoint(const Mat3& h, double rtol = 1e-10) {
    Mat3 d = adjoint(h) - h;
    return frobenius_norm(d) <= rtol * std::max(frobenius_norm(h), 1e-300);
}

struct RankKernel {
    int rank;
    std::vector<Vec3> kernel;  // Euclidean-orthonormal basis
    std::array<double, 3> singular_values;
};

/// Numerical rank and kernel by singular-value thresholding at tol * sigma_max.
RankKernel rank_kernel(const Mat3& h, double tol = kTolRank);

struct Eigen3 {
    std::array<Complex, 3> values;   // sorted by modulus descending
    std::array<Vec3, 3> vectors;     // unit Euclidean length
    double max_residual;             // max ||h v - lambda v|| over the three pairs
    bool ill_conditioned;            // residual target 1e-10*||h|| unreachable (reported, not fatal)
};

/// Eigen decomposition of a general complex 3x3 matrix: closed-form cubic with one
/// guarded Newton polish per root, eigenvectors from the adjugate (SVD fallback).
Eigen3 eigen3(const Mat3& h);

// ---- self-adjoint parametrization -------------------------------------------------------
//
// h is self-adjoint for J iff H := J h is Hermitian. Hermitian matrices carry 9 real
// parameters [H00,H11,H22, Re H01,Im H01, Re H02,Im H02, Re H12,Im H12], and the bisector
// membership <h b, b> equals the plain Hermitian value b^H H b — linear in the parameters.

Mat3 hermitian_from_params(const std::array<double, 9>& p);
std::array<double, 9> params_from_hermitian(const Mat3& h_herm);

inline Mat3 selfadjoint_from_hermitian(const Mat3& hh, const HermitianForm& f = standard_form()) {
    return f.j * hh;  // J^-1 = J for the standard chart
}
inline Mat3 hermitian_of_selfadjoint(const Mat3& h, const HermitianForm& f = standard_form()) {
    return f.j * h;
}

/// trace of the self-adjoint map J*H in terms of the Hermitian parameters
inline double selfadjoint_trace(const std::array<double, 9>& p) { return p[0] + p[1] - p[2]; }

struct VanishingFamily {
    std::vector<Mat3> basis;      // self-adjoint maps h with <h b, b> = 0 on all samples
    std::vector<double> sigmas;   // singular value profile of the sampled system
    std::size_t dim;              // numerical null-space dimension
};

/// Solution space of { h : h* = h, (traceless), <h b, b> = 0 for all samples }.
/// The workhorse behind Prop-style base recovery and witness constructions.
VanishingFamily solve_vanishing_family(const std::vector<Vec3>& samples, bool traceless,
                                       double rtol = 1e-7);

/// Realified coordinates of a matrix span (R^18 per matrix), for principal-angle tests.
RMat realify_matrix_span(const std::vector<Mat3>& span);

/// Largest principal angle between two spans of 3x3 complex matrices (real subspaces).
double matrix_span_max_angle(const std::vector<Mat3>& a, const std::vector<Mat3>& b);

// ---- seeded point generators ------------------------------------------------------------

ProjectivePoint random_point(Rng& rng);
ProjectivePoint random_negative_point(Rng& rng);
ProjectivePoint random_positive_point(Rng& rng);
ProjectivePoint random_isotropic_point(Rng& rng);

/// A random J-unitary map (preserves the form), built as exp(i J H) for Hermitian H.
Mat3 random_form_unitary(Rng& rng, double scale = 1.0);

}  // namespace equiloci
