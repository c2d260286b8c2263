#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equiloci/cubic.hpp"
#include "equiloci/linear_family.hpp"

namespace equiloci {

enum class EquitantTag { ThreeLines, ConicPlusLine, NodalSymmetric, NodalAsymmetric, Smooth };

const char* equitant_tag_name(EquitantTag t);

/// Elliptic family equitant from four points of a common signature: rank-one maps
/// w_i = <-,p_i> p_i with an essentially unique positive dependence sum a_i p_i = 0.
/// Representatives are rephased so every a_i > 0, sorted descending, and scaled with
/// a_4 = 1 (the dependence is only defined up to positive scale).
class EquitantFamily {
  public:
    /// sigma = Positive/Negative: representatives are normalized to <p,p> = +-1.
    /// sigma = Isotropic: representatives are taken exactly as given (the family
    /// genuinely depends on that choice).
    static EquitantFamily make(const std::array<Vec3, 4>& points, SignTag sigma);

    const std::array<Vec3, 4>& points() const { return points_; }
    SignTag sigma() const { return sigma_; }
    const std::array<double, 4>& a() const { return a_; }
    const std::array<Mat3, 4>& w() const { return w_; }
    const std::array<Mat3, 3>& basis() const { return basis_; }  // w1-w2, w2-w3, w3-w4

    Mat3 at(double x1, double x2, double x3) const {
        return basis_[0] * x1 + basis_[1] * x2 + basis_[2] * x3;
    }

  private:
    std::array<Vec3, 4> points_;
    SignTag sigma_ = SignTag::Negative;
    std::array<double, 4> a_{};
    std::array<Mat3, 4> w_;
    std::array<Mat3, 3> basis_;
};

/// det(x1 h1 + x2 h2 + x3 h3) of the family basis, real coefficients, unit-normalized.
CubicR cubic_EW(const EquitantFamily& fam);

struct SingularFocus {
    ProjectivePoint point;
    std::array<int, 4> eps;  // sign pattern: <s, p_i> = eps_i
    double defect;           // residual of the implied fourth equation
};

struct EquitantCase {
    EquitantTag tag;
    std::vector<SingularFocus> singular_foci;
    std::optional<EquitantTag> near_degenerate;  // warning: within 1e-6 of another case
};

/// Case split on the dependence coefficients (exact relations at tol_a = 1e-9 a1).
EquitantCase classify_equitant(const EquitantFamily& fam);

/// The four closed-form coefficients of the base biquadratic
/// p(s0,s1,t0,t1) = r00 s0^2 t0^2 + r01 s0^2 t1^2 + 2 s0 s1 t0 t1 + r10 s1^2 t0^2 + r11 s1^2 t1^2.
std::array<double, 4> biquadratic_coefficients(const std::array<double, 4>& a);

struct BaseBiquadratic {
    double r00, r01, r10, r11;
};

BaseBiquadratic base_biquadratic(const EquitantFamily& fam);

struct TracedPoint {
    double s0, s1, t0, t1;
    Complex x1, x2;           // unit-modulus chart coordinates <q,p1>, <q,p2>
    Vec3 q;                   // ambient representative with <q,p3> = 1
    SignTag signature;
    double coord_spread;      // max_i | |<q,p_i>| - |<q,p_1>| |
    double distance_spread;   // max-min of distance(q, p_i); NaN unless q negative, sigma -1
};

struct TraceResult {
    std::vector<TracedPoint> points;
    int skipped_parameters;   // (s0:s1) values with no real t-root
    double dual_condition;    // condition number of the dual-basis solve
};

/// Points of the base curve along the (s0:s1) chart; n parameter values on the circle.
TraceResult trace_base(const EquitantFamily& fam, int n);

struct IrreducibilityReport {
    bool reducible;
    std::string mechanism;
    std::array<double, 4> r;
};

/// The factorization dichotomy of the base biquadratic.
IrreducibilityReport irreducibility_report(const EquitantFamily& fam);

struct FocalCurve {
    std::vector<Vec3> ew_points;     // sampled coefficient vectors on E_W
    std::vector<ProjectivePoint> foci;
    CubicC fitted;                   // complex cubic through the foci, unit coefficients
    double max_residual;
};

/// Sample foci along E_W and fit the focal cubic E. Throws NonGenericFamily when E_W
/// carries a confocal line or is a line plus a point.
FocalCurve focal_curve(const std::array<Mat3, 3>& basis, int n, std::uint64_t seed = 0);
FocalCurve focal_curve(const EquitantFamily& fam, int n, std::uint64_t seed = 0);

struct RealnessWitness {
    std::array<ProjectivePoint, 3> foci;           // of w1-w2, w1-w3, w1-w4
    std::array<double, 3> orthogonality_residual;  // |<focus, p1>|
    double line_division_residual;                 // the polar line against the fitted E
};

RealnessWitness realness_witness(const EquitantFamily& fam);

struct RecoveredFamily {
    std::vector<Mat3> basis;      // self-adjoint solutions of <h b, b> = 0 on the samples
    std::vector<double> sigmas;   // spectrum of the sampled linear system
    double max_trace;             // largest |tr h| over the basis (tracelessness emerges)
};

/// Recovery of the family from its base: the solution space over all self-adjoint maps (no trace
/// condition imposed) from >= 9 base samples. Throws InsufficientSamples and
/// UnexpectedDimension (when the null space dimension is not 3).
RecoveredFamily recover_family(const std::vector<ProjectivePoint>& samples);

struct TangencyReport {
    bool first_alternative;  // three distinct degenerate directions in the pencil
    // first alternative: the telescoping points and per-map decomposition residuals
    std::array<ProjectivePoint, 3> points;
    double decomposition_residual;
    // second alternative: which input carries the double root
    bool double_at_second;
    PencilReport pencil;
};

/// Tangency analysis of a pencil of two distinct family members.
TangencyReport pencil_tangency(const EquitantFamily& fam, const Mat3& h, const Mat3& hprime);

/// Seeded instance with a prescribed dependence vector: p1..p3 at equal hyperbolic
/// distance from the chart center (the distance is tuned so that the dependence-closing
/// fourth point is again a unit-negative representative). require_ball retries until the
/// traced base meets the ball; leave it off for the nodal-asymmetric stratum, where a
/// ball base point provably degenerates the configuration.
EquitantFamily equitant_instance(const std::array<double, 4>& a_target, std::uint64_t seed,
                                 bool require_ball = false);

/// Dependence targets for each case of the classification, randomized within the case.
std::array<double, 4> case_target(EquitantTag tag, Rng& rng);

}  // namespace equiloci
