#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "equiloci/hermitian.hpp"

namespace equiloci {

enum class BisectorKind { Hyperbolic, Spherical, Parabolic };

const char* kind_name(BisectorKind k);

/// Geodesic R = P_C(W) for a 2-dimensional real span W with real Gram matrix.
/// Stored as two representatives; the constructor rephases the second one so that
/// all three Gram entries are real.
struct Geodesic {
    Vec3 w;
    Vec3 w_prime;

    static Geodesic through(const Vec3& a, const Vec3& b);

    /// max |Im| over the three Gram entries, relative to the representative norms
    double gram_imag_residual() const;
    /// point of the geodesic at real parameters (a:b)
    Vec3 at(double a, double b) const { return w * a + w_prime * b; }
};

struct Slice {
    ProjectivePoint polar;    // the point h p, orthogonal to the slice
    ProjectivePoint focus;    // spanning pair: the focus ...
    ProjectivePoint through;  // ... and the generating point on the bisector
};

/// R-plane inside the bisector containing the real spine: three representatives with a
/// real Gram matrix, the first two spanning the real spine.
struct Meridian {
    Vec3 w;
    Vec3 w_prime;
    Vec3 q;

    double gram_imag_residual() const;
    Vec3 at(double a, double b, double c) const { return w * a + w_prime * b + q * c; }
};

/// Traceless self-adjoint rank-2 map h together with its focus P_C(ker h) and kind.
/// Normalized to ||h||_F = 1 with a deterministic sign choice; the bisector itself
/// determines h only up to real scale, which same_bisector honors.
class BisectorMap {
  public:
    static BisectorMap from_matrix(const Mat3& h);

    const Mat3& h() const { return h_; }
    const ProjectivePoint& focus() const { return focus_; }
    BisectorKind kind() const { return kind_; }

    /// nonnull eigenvalue pair and vertex data (cached from construction)
    const Eigen3& eigen() const { return eigen_; }

  private:
    BisectorMap() = default;
    Mat3 h_;
    ProjectivePoint focus_;
    BisectorKind kind_ = BisectorKind::Hyperbolic;
    Eigen3 eigen_{};
};

/// Equidistant locus map for two non-isotropic, projectively distinct points.
BisectorMap bisector_from_points(const ProjectivePoint& p1, const ProjectivePoint& p2);

/// True iff the two maps are R^*-proportional (same bisector).
bool same_bisector(const BisectorMap& b1, const BisectorMap& b2);

/// The geodesic of slice polar points. Hyperbolic/spherical: through the vertices.
/// Parabolic: span(h p, i h^2 p) for a deterministic isotropic seed p. There is no
/// canonical geodesic in the parabolic base; this picks one reproducibly.
Geodesic real_spine(const BisectorMap& b);

struct ParabolicBasis {
    Vec3 p;    // isotropic, distinct from the focus
    Vec3 hp;   // unit positive
    Vec3 hhp;  // the focus representative
    double gram_residual;  // deviation from the Gram matrix [[0,0,1],[0,1,0],[1,0,0]]
};

/// Basis (p, hp, h^2 p) scaled so the Gram matrix is exactly antidiag(1,1,1).
ParabolicBasis parabolic_normal_basis(const BisectorMap& b, std::uint64_t seed = 0);

/// Bisector whose real spine is the given geodesic: h = <-,w> i w' - <-,w'> i w.
BisectorMap bisector_from_spine(const Geodesic& g);

/// Membership test |<h p, p>| <= tol_mem ||h|| ||p||^2.
bool contains(const BisectorMap& b, const ProjectivePoint& p, double tol = kTolMember);
bool contains_rep(const BisectorMap& b, const Vec3& rep, double tol = kTolMember);

Slice slice_through(const BisectorMap& b, const ProjectivePoint& p);

Meridian meridian_through(const BisectorMap& b, const ProjectivePoint& q);

/// Normal covector n_p = <-, p> h p at a non-isotropic bisector point.
struct NormalCovector {
    Vec3 hp;
    Vec3 at;
    /// pairing with a tangent direction v (in the chart <v,p> = 0): Re <hp, v>
    double pair(const Vec3& v) const { return inner(hp, v).real(); }
};

NormalCovector normal_vector(const BisectorMap& b, const ProjectivePoint& p);

struct SpineReflection {
    ProjectivePoint c2;
    Vec3 c1_rep;  // scaled so that sign * h = <-,c1> c1 - <-,c2> c2
    Vec3 c2_rep;
    int sign;
    double residual;  // ||sign*h - (w(c1) - w(c2))|| / ||h||
};

/// Reflection of a complex-spine point in the real spine, with the rank-one split of h.
SpineReflection reflect_in_spine(const BisectorMap& b, const ProjectivePoint& c1);

/// True iff the complex line C c1 meets the real span of (w, w') nontrivially.
bool on_real_span(const std::vector<Vec3>& real_span, const Vec3& c, double rtol = 1e-9);

/// Exact point of B_h drawn through the slice decomposition: pick a spine point r,
/// then a point of the projective line polar to r. Uniformly useful for all kinds.
Vec3 random_point_on(const BisectorMap& b, Rng& rng);

/// Same, restricted to ball points (throws EmptyBaseRegion after the retry budget).
Vec3 random_negative_point_on(const BisectorMap& b, Rng& rng, int budget = 2000);

}  // namespace equiloci
