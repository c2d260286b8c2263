#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "equiloci/bisector.hpp"
#include "equiloci/cubic.hpp"

namespace equiloci {

/// Homogeneous degree-3 form in 2..4 real variables (the determinant form of a span).
struct DetForm {
    int nvars = 0;
    std::vector<std::array<int, 4>> monomials;
    std::vector<double> coeffs;

    double eval(const std::vector<double>& x) const;
    double max_abs() const;
};

/// det(sum x_i h_i) expanded by interpolation on the integer grid {-2..2}^n.
DetForm det_form(const std::vector<Mat3>& basis);

struct LinearFamilyCheck {
    bool linear;
    DetForm form;  // normalized to the unit-Frobenius basis scaling
};

/// True iff the determinant form vanishes identically on the real span.
/// Throws DependentBasis when the basis is not real-linearly independent.
LinearFamilyCheck is_linear_family(const std::vector<Mat3>& basis);

/// Real span of bisector maps with det == 0; basis elements are renormalized to
/// unit Frobenius norm on construction.
class LinearFamily {
  public:
    static LinearFamily from_basis(std::vector<Mat3> basis);

    const std::vector<Mat3>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    Mat3 at(const std::vector<double>& x) const;

  private:
    std::vector<Mat3> basis_;
};

/// Transversality of the bisectors at a common non-isotropic point: the stacked
/// map w -> w p must be injective on the real span.
bool transversal_at(const std::vector<Mat3>& maps, const ProjectivePoint& p);

struct RankOneElement {
    std::vector<double> coords;  // unit coefficient vector in the family basis
    ProjectivePoint f0;          // isotropic range point: the element is r <-,f0> f0
    double sigma_ratio;          // sigma_2 / sigma_1 of the matrix at the optimum
};

/// Real-span elements of rank <= 1 (grid scan over the coefficient sphere + polish).
std::vector<RankOneElement> rank1_elements(const LinearFamily& fam);

struct FocalEmbedding {
    std::vector<Vec3> images;        // f(h_i) for the family basis
    double max_defect;               // worst of h(fh) = 0 and the polarization rows
    std::vector<double> sigmas;      // singular-value profile of the linear system
};

/// The R-linear embedding f with h (f h) = 0, unique up to complex scaling;
/// the seed only rotates the null-space gauge (used by the uniqueness tests).
FocalEmbedding focal_embedding(const LinearFamily& fam, std::uint64_t seed = 0);

enum class FamilyTag {
    ConfocalLine,
    ConfocalNegative3,
    ConfocalNegative4,
    RPlaneFamily,
    MaximalNonconfocalWS,
    SliceGeodesicFamily,
    EuclideanFocusFamily,
    NonconfocalLine,
};

const char* family_tag_name(FamilyTag t);

struct FamilyClass {
    FamilyTag tag;
    std::optional<ProjectivePoint> common_focus;   // confocal branch
    std::optional<ProjectivePoint> slice_polar;    // polar point of the common slice P(U)
    std::vector<Vec3> rplane_basis;                // RPlaneFamily: totally real image span
    std::vector<Vec3> singular_circle;             // NonconfocalLine: real span of P(fW)
    std::vector<Vec3> cone_basis;                  // NonconfocalLine: geodesic cone reps
};

/// Decision tree over the complete taxonomy of linear families.
FamilyClass classify_family(const LinearFamily& fam);

/// Newton projection of a seed onto the common zero locus of <h_i q, q> = 0.
std::optional<Vec3> project_to_base(const std::vector<Mat3>& maps, Vec3 q0, int budget = 100);

/// n base points by seeded random search with Newton projection.
std::vector<ProjectivePoint> base_sample(const LinearFamily& fam, int n, std::uint64_t seed);

struct PencilReport {
    std::array<double, 4> cubic;  // coefficients of x^3, x^2 y, x y^2, y^3
    struct Root {
        double x, y;        // real projective root of det(x h1 + y h2)
        int multiplicity;
        Mat3 member;
    };
    std::vector<Root> roots;
    bool has_double_root;  // the focus-on-bisector alternative (det = r x^2 y pattern)
};

/// Binary determinant cubic of the pencil of two bisectors, with its real projective
/// roots. Throws IsLinearFamily when det vanishes identically on the span.
/// The Mat3 overload works in the caller's scaling (telescoping identities stay exact).
PencilReport giraud_pencil(const Mat3& h1, const Mat3& h2);
PencilReport giraud_pencil(const BisectorMap& b1, const BisectorMap& b2);

struct NontransversalDiagnosis {
    bool transversal;
    std::optional<LinearFamily> line;  // the nonconfocal line containing both maps
    double circle_residual;            // membership of p in the singular circle P(fW)
};

NontransversalDiagnosis nontransversal_diagnosis(const BisectorMap& b1, const BisectorMap& b2,
                                                 const ProjectivePoint& p);

}  // namespace equiloci
