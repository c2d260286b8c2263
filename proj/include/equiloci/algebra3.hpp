#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "equiloci/cubic.hpp"
#include "equiloci/errors.hpp"
#include "equiloci/hermitian.hpp"

namespace equiloci {

/// 3-dimensional algebra (bilinear operation) over the complex numbers, standing in for
/// an algebraically closed field of characteristic 0. The structure tensor c[i][j][k]
/// gives e_i . e_j = sum_k c[i][j][k] e_k.
class Algebra3 {
  public:
    using Tensor = std::array<std::array<std::array<Complex, 3>, 3>, 3>;

    Algebra3() = default;
    explicit Algebra3(const Tensor& c) : c_(c) {}

    /// Build from a matrix of linear forms: phi[k][j] lists the (x0,x1,x2) coefficients
    /// of entry (k, j) of the left-multiplication matrix.
    static Algebra3 from_phi(const std::array<std::array<std::array<Complex, 3>, 3>, 3>& phi);

    const Tensor& tensor() const { return c_; }

    Vec3 product(const Vec3& x, const Vec3& y) const;

    /// Left multiplication matrix Phi(x) = x0 a0 + x1 a1 + x2 a2.
    Mat3 left_mult(const Vec3& x) const;
    /// Right multiplication matrix (y acting from the right).
    Mat3 right_mult(const Vec3& y) const;

    /// Isotopy action: b'(u, v) = g3 b(g1^-1 u, g2^-1 v).
    Algebra3 transformed(const Mat3& g1, const Mat3& g2, const Mat3& g3) const;

    double tensor_norm() const;

  private:
    Tensor c_{};
};

// fixed algebras used throughout the tests and reports
Algebra3 sl2_algebra();                 // commutator algebra on trace-zero 2x2 matrices
Algebra3 triple_line_algebra();        // triple-line normal form
Algebra3 double_line_algebra();        // line-plus-double-line normal form
Algebra3 double_line_sign_variant();   // one sign flipped; its cubic differs (see normal_form_verify)
Algebra3 ufamily_algebra(double u);     // the conic-plus-line family outside geometric tensors

struct DetCubic {
    CubicC p;              // det of the left multiplication, possibly integer-snapped
    bool identically_zero;
    bool snapped;          // all coefficients were within 1e-9 of Gaussian integers
};

/// Determinant cubic of the left multiplications, exact for integer tensors.
DetCubic det_cubic(const Algebra3& a);
/// Same for the right multiplications.
DetCubic det_cubic_right(const Algebra3& a);

struct DivisorSample {
    ProjectivePoint d;
    int mult_rank;  // rank of the corresponding multiplication matrix
};

/// n points of the left zero-divisor scheme with multiplication ranks. For the
/// identically-zero cubic the samples come from a fixed plane grid.
std::vector<DivisorSample> left_zero_divisors(const Algebra3& a, int n, std::uint64_t seed);
std::vector<DivisorSample> right_zero_divisors(const Algebra3& a, int n, std::uint64_t seed);

struct GenericityReport {
    bool generic;
    std::vector<DivisorSample> offending;  // divisors with multiplication rank <= 1
};

/// Sampled genericity: every left/right zero divisor acts with rank 2.
GenericityReport is_generic(const Algebra3& a, int n, std::uint64_t seed);

/// The isomorphism phi: D1 -> D2, d1 . phi(d1) = 0, for rank-2 divisors.
ProjectivePoint phi_of(const Algebra3& a, const ProjectivePoint& d1);

struct ProjectivityReport {
    bool projective;
    Mat3 best_map;        // least-squares linear map with phi(d) ~ M d
    double max_residual;  // worst angular deviation sin(angle(M d, phi d))
    int samples;
};

ProjectivityReport phi_projectivity_test(const Algebra3& a, int n, std::uint64_t seed);

struct MultiplicationKernel {
    std::size_t dimension;
    std::vector<std::array<Complex, 9>> basis;  // vec(x tensor y) index 3i+j
};

/// Null space of the multiplication map A tensor A -> A (dimension 6 for generic algebras).
MultiplicationKernel multiplication_kernel(const Algebra3& a);

struct GraphSpan {
    std::size_t rank;          // rank of the sampled (d, phi d) tensors inside A tensor A
    double max_kernel_defect;  // worst ||mu(d tensor phi d)|| over the samples
    int samples;
};

/// Span of the graph of phi inside P(A tensor A); expected rank 6 (projective dim 5).
GraphSpan graph_span_check(const Algebra3& a, int n, std::uint64_t seed);

struct NormalFormReport {
    CubicC triple_line_det;           // expected exactly x0^3
    CubicC double_line_det; // expected exactly x0^2 x1
    CubicC double_line_variant_det;   // comes out as x0^2 x1 - 2 x0 x1 x2
    CubicC ufamily_det;           // u = 2: x0 (x0^2 - x1 x2)
    double phi_identity_residual_triple;  // max angle between d and phi(d) on sampled divisors
    double phi_identity_residual_double;
};

/// Fixed verification of the normal forms, including the sign variant of the
/// line-plus-double-line matrix, whose determinant picks up an extra term.
NormalFormReport normal_form_verify();

}  // namespace equiloci
