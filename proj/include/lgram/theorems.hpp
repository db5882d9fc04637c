#pragma once

// Gram-determinant decision procedures for configurations in H^n:
//
//   penner_test        n+1 horospheres, A_ij = lambda_ij^2
//   ptolemy1_test      n+1 points on a horosphere/hypersphere, B_ij = sinh^2(d/2)
//   ptolemy2_test      n+2 points, same B
//   casey_test         n+1 hyperplanes, C_ij = sigma_ij, over coorientations
//   corollary_d_test   n+2 Euclidean hyperspheres, D_ij = tau_ij
//
// Each degenerate verdict can be turned into a geometric witness (common
// hyperplane, fitted umbilical hypersurface, or one of the three Casey cases),
// and every witness comes with a residual so callers can certify it.

#include "lgram/geometry.hpp"
#include "lgram/lorentz.hpp"
#include "lgram/models.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace lgram {

// --- four-term relations ---------------------------------------------------

enum class FourTermAlt { Alt12_34, Alt13_24, Alt14_23, None };

struct FourTermRelation {
  FourTermAlt which = FourTermAlt::None;
  /// p1 = x12 x34, p2 = x13 x24, p3 = x14 x23.
  std::array<double, 3> products{};
  /// |p_k - (sum of the other two)| for the reported alternative; the
  /// smallest such value when which == None.
  double residual = 0.0;
};

/// Which of the three Ptolemy-type identities holds for a symmetric 4x4 table
/// of nonnegative values (lambda lengths, distances, tangent lengths). Ties
/// go to the smallest residual, then Alt12_34 < Alt13_24 < Alt14_23.
FourTermRelation four_term_relation(const Eigen::Matrix4d& x, double tol = kDefaultTol);

// --- horospheres ------------------------------------------------------------

struct PennerResult {
  Eigen::MatrixXd matrix;
  DegeneracyVerdict verdict;
  /// Hyperplane whose ideal boundary holds every centre.
  std::optional<CoHyperplane> witness;
  double witness_residual = 0.0;
  /// All horospheres share one centre; A = 0 and no hyperplane is singled out.
  bool same_centre = false;
};

Eigen::MatrixXd lambda_sq_matrix(std::span<const Horosphere> hs);
PennerResult penner_test(std::span<const Horosphere> hs, double tol = kDefaultTol);

// --- points ------------------------------------------------------------------

/// Raw umbilical datum u with <p, u> = (<u,u> - 1)/2 on the surface.
struct UmbilicalDatum {
  LorentzVector u;
};

using UmbilicalSurface = std::variant<Horosphere, Hypersphere, EquidistantBranch, UmbilicalDatum>;

/// The vector u for which every point p of the surface has
/// <p, u> = (<u,u> - 1)/2. Throws DegenerateDatum when <u,u> is +-1.
LorentzVector umbilical_datum(const UmbilicalSurface& s);

Eigen::MatrixXd sinh_sq_matrix(std::span<const HPoint> ps);

struct Ptolemy1Result {
  Eigen::MatrixXd matrix;
  DegeneracyVerdict verdict;
  /// Common hyperplane of all points.
  std::optional<CoHyperplane> witness;
  double witness_residual = 0.0;
};

Ptolemy1Result ptolemy1_test(std::span<const HPoint> ps, const UmbilicalSurface& surface,
                             double tol = kDefaultTol);

DegeneracyVerdict ptolemy2_test(std::span<const HPoint> ps, double tol = kDefaultTol);

enum class UmbilicalKind { Horosphere, Hypersphere, Hyperplane, EquidistantBranch };

/// Level set {x : <x, datum> = offset} through the points, normalised by kind:
///   Horosphere         datum = forward lightlike rep, offset = -1/sqrt(2)
///   Hypersphere        datum = unit forward timelike centre, offset = -cosh r
///   Hyperplane         datum = unit spacelike normal, offset ~ 0
///   EquidistantBranch  datum = unit spacelike normal, offset != 0
/// Spacelike data have their first nonzero coordinate positive.
struct UmbilicalFit {
  UmbilicalKind kind = UmbilicalKind::Hyperplane;
  LorentzVector datum{0.0, 0.0, 0.0};
  double offset = 0.0;
  double radius = 0.0;  // Hypersphere only
  double residual = 0.0;
};

/// Classifies the surface of n+2 points with degenerate B through the lift to
/// R^{n+1,1}. Throws NotDegenerate or NormalSearchFailed.
UmbilicalFit ptolemy2_classify(std::span<const HPoint> ps, double tol = kDefaultTol);

/// Fits the level set through the points by solving <p_i - p_1, y> = 0.
UmbilicalFit fit_umbilical(std::span<const HPoint> ps, double tol = kDefaultTol);

// --- cooriented hyperplanes ---------------------------------------------------

enum class CaseyCaseKind {
  TangentHyperplaneAtInfinity,   // (i)   unit spacelike v, |<n_i, v>| = 1
  CommonIdealPoint,              // (ii)  lightlike w, <n_i, w> = 0
  OrthogonalAndEquallyInclined,  // (iii) unit u, v: <n_i, u> = 0, |<n_i, v>| = lambda
};

struct CaseyCase {
  CaseyCaseKind kind = CaseyCaseKind::CommonIdealPoint;
  /// (i): {v}; (ii): {w}; (iii): {u, v}.
  std::vector<LorentzVector> witnesses;
  double lambda = 0.0;  // (iii) only
  double residual = 0.0;
  bool passed = false;
};

struct WitnessCheck {
  double residual = 0.0;
  bool pass = false;
};

WitnessCheck casey_witness_check(const CaseyCase& c, std::span<const LorentzVector> normals,
                                 double tol = kDefaultTol);

Eigen::MatrixXd sigma_matrix(std::span<const LorentzVector> normals);

/// Extracts a witness from signed unit normals with degenerate C: first from
/// v = sum lambda_j n_j for a kernel vector lambda, then, when v = 0, from the
/// subspace the normals span.
/// Returns the first candidate passing casey_witness_check at tol, or the
/// one with the smallest residual.
CaseyCase casey_classify(std::span<const LorentzVector> normals, double tol = kDefaultTol);

struct CaseyVerdict {
  /// One sign per hyperplane, signs[0] = +1.
  std::vector<int> signs;
  Eigen::MatrixXd matrix;
  DegeneracyVerdict verdict;
  std::optional<CaseyCase> casey_case;
};

/// With search, all 2^n sign vectors with a leading +1 are tried and the one
/// minimising sigma_min / max(sigma_max, 1) is kept (first in lexicographic
/// order, + before -, on ties). At most 16 hyperplanes.
CaseyVerdict casey_test(std::span<const CoHyperplane> hps, double tol = kDefaultTol,
                        bool search = true);

// --- Euclidean hyperspheres ---------------------------------------------------

struct EuclideanCaseyCase {
  CaseyCaseKind kind = CaseyCaseKind::CommonIdealPoint;
  /// (i): common tangent sphere/plane; (iii): orthogonal one, inclined one.
  std::vector<SphereOrPlane> surfaces;
  /// (ii): the common point; nullopt means the point at infinity.
  std::optional<Eigen::VectorXd> point;
  double lambda = 0.0;
  /// The underlying classification of the lifted hyperplanes.
  CaseyCase lifted;
};

struct CaseyEVerdict {
  std::vector<int> signs;
  Eigen::MatrixXd matrix;
  DegeneracyVerdict verdict;
  /// Verdict of C built from the lifted normals with the same signs.
  DegeneracyVerdict lifted_verdict;
  bool lift_agrees = true;
  std::optional<EuclideanCaseyCase> casey_case;
};

Eigen::MatrixXd tau_matrix(std::span<const CoSphereE> spheres);

CaseyEVerdict corollary_d_test(std::span<const CoSphereE> spheres, double tol = kDefaultTol,
                               bool search = true);

}  // namespace lgram
