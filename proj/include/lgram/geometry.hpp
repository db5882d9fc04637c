#pragma once

// Objects of the hyperboloid model and their pairwise invariants: distance,
// lambda lengths of horospheres, sigma of cooriented hyperplanes and the
// Euclidean quantities (inversive distance, tau, tangent length) of
// cooriented hyperspheres.

#include "lgram/lorentz.hpp"

#include <Eigen/Dense>

#include <variant>

namespace lgram {

/// Point of H^n: <x,x> = -1, last coordinate positive.
class HPoint {
 public:
  explicit HPoint(LorentzVector rep);
  const LorentzVector& rep() const noexcept { return rep_; }
  int n() const noexcept { return rep_.n(); }

  /// Lifts Euclidean coordinates x in R^n to (x, sqrt(1 + |x|^2)).
  static HPoint from_spatial(const Eigen::VectorXd& x);

 private:
  LorentzVector rep_;
};

/// Horosphere {x : <x, rep> = -1/sqrt(2)} for a forward lightlike rep. The
/// scale of rep matters: it fixes which horosphere about the centre.
class Horosphere {
 public:
  explicit Horosphere(LorentzVector rep);
  const LorentzVector& rep() const noexcept { return rep_; }
  int n() const noexcept { return rep_.n(); }

 private:
  LorentzVector rep_;
};

/// Hyperplane with a unit spacelike normal; the sign of the normal is the
/// coorientation.
class CoHyperplane {
 public:
  explicit CoHyperplane(LorentzVector normal);
  const LorentzVector& normal() const noexcept { return normal_; }
  int n() const noexcept { return normal_.n(); }
  CoHyperplane flipped() const { return CoHyperplane(-normal_); }

 private:
  LorentzVector normal_;
};

class Hypersphere {
 public:
  Hypersphere(HPoint centre, double radius);
  const HPoint& centre() const noexcept { return centre_; }
  double radius() const noexcept { return radius_; }

 private:
  HPoint centre_;
  double radius_;
};

/// One branch {x : <x, normal> = offset} of an equidistant hypersurface.
class EquidistantBranch {
 public:
  EquidistantBranch(LorentzVector normal, double offset);
  const LorentzVector& normal() const noexcept { return normal_; }
  double offset() const noexcept { return offset_; }

 private:
  LorentzVector normal_;
  double offset_;
};

/// Cooriented hypersphere of E^n: eps = +1 outward normal, -1 inward.
class CoSphereE {
 public:
  CoSphereE(Eigen::VectorXd centre, double radius, int eps = 1);
  const Eigen::VectorXd& centre() const noexcept { return centre_; }
  double radius() const noexcept { return radius_; }
  int eps() const noexcept { return eps_; }
  int n() const noexcept { return static_cast<int>(centre_.size()); }
  CoSphereE with_eps(int eps) const { return CoSphereE(centre_, radius_, eps); }

 private:
  Eigen::VectorXd centre_;
  double radius_;
  int eps_;
};

/// hyperbolic distance: arccosh(max(1, -<p,q>)).
double distance(const HPoint& p, const HPoint& q);

/// sinh^2(distance/2) = -(<p,q> + 1)/2, clamped at 0.
double half_dist_sinh_sq(const HPoint& p, const HPoint& q);

/// lambda = sqrt(-<v1,v2>); exactly 0 when the centres coincide.
double lambda_length(const Horosphere& a, const Horosphere& b);

/// Same-centre test: reps parallel after normalising by |v|_inf.
bool same_centre(const Horosphere& a, const Horosphere& b);

/// sigma = (<n1,n2> - 1) / 2.
double sigma(const CoHyperplane& a, const CoHyperplane& b);

enum class SigmaRelation {
  TangentAtInfinitySame,
  Intersecting,
  TangentAtInfinityOpposite,
  DisjointSame,
  DisjointOpposite,
};

/// Geometric reading of a sigma value. `angle` is set for Intersecting,
/// `distance` for the two Disjoint relations.
struct SigmaDecoded {
  SigmaRelation relation;
  double angle = 0.0;
  double distance = 0.0;
};

SigmaDecoded sigma_decode(double value, double tol = kDefaultTol);

double inversive_distance(const CoSphereE& a, const CoSphereE& b);
double tau(const CoSphereE& a, const CoSphereE& b);
/// Exterior (same eps) or interior (opposite eps) common tangent length.
double tangent_length(const CoSphereE& a, const CoSphereE& b);

using Surface = std::variant<Horosphere, CoHyperplane, Hypersphere, EquidistantBranch>;

/// Residual of the defining equation of `surface` at p.
double membership_residual(const Surface& surface, const HPoint& p);
bool contains(const Surface& surface, const HPoint& p, double tol = kDefaultTol);

namespace detail {

/// acosh/asinh-style domain clamp: values within 1e-7 outside [lo, inf) are
/// clamped, anything further raises DomainError.
double clamp_below(double x, double lo, const char* what);

}  // namespace detail

}  // namespace lgram
