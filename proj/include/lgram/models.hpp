#pragma once

// Conversions between the hyperboloid, Poincare ball and upper half-space
// models, the isometric Euclidean chart of a horosphere, and the lift of
// Euclidean cooriented hyperspheres to hyperplane normals one dimension up.

#include "lgram/geometry.hpp"

#include <Eigen/Dense>

#include <optional>

namespace lgram {

/// Point of the open unit ball in R^n.
class BallPoint {
 public:
  explicit BallPoint(Eigen::VectorXd coords);
  const Eigen::VectorXd& coords() const noexcept { return coords_; }

 private:
  Eigen::VectorXd coords_;
};

/// Point z + i t of the upper half-space model of H^n: z in R^{n-1}, t > 0.
class HalfSpacePoint {
 public:
  HalfSpacePoint(Eigen::VectorXd z, double t);
  const Eigen::VectorXd& z() const noexcept { return z_; }
  double t() const noexcept { return t_; }

 private:
  Eigen::VectorXd z_;
  double t_;
};

BallPoint hyperboloid_to_ball(const HPoint& p);
HPoint ball_to_hyperboloid(const BallPoint& b);
/// Poincare ball metric, used as an independent distance oracle.
double ball_distance(const BallPoint& a, const BallPoint& b);

/// Half-space chart with the ideal point (0, ..., 0, 1, 1) sent to infinity:
/// t = 1/(x_{n+1} - x_n), z_j = t x_j.
HalfSpacePoint hyperboloid_to_halfspace(const HPoint& p);
HPoint halfspace_to_hyperboloid(const HalfSpacePoint& h);
HalfSpacePoint ball_to_halfspace(const BallPoint& b);
BallPoint halfspace_to_ball(const HalfSpacePoint& h);

/// Isometric chart R^{n-1} of a horosphere: |chart(u) - chart(v)| equals
/// 2 sinh(dist(u,v)/2). Throws HypothesisViolated when p is off h.
Eigen::VectorXd horosphere_chart(const Horosphere& h, const HPoint& p,
                                 double tol = kDefaultTol);
/// Inverse of horosphere_chart.
HPoint horosphere_chart_inverse(const Horosphere& h, const Eigen::VectorXd& z);

/// Unit normal eps (c, (|c|^2 - r^2 - 1)/2, (|c|^2 - r^2 + 1)/2) / r in
/// R^{n+1,1}; <lift(a), lift(b)> = -inversive_distance(a, b).
CoHyperplane sphere_lift(const CoSphereE& s);

/// Lightlike vector (x, (|x|^2 - 1)/2, (|x|^2 + 1)/2) of a point of R^n; it is
/// orthogonal to sphere_lift(s) exactly when x lies on s.
LorentzVector point_lift(const Eigen::VectorXd& x);

/// A Euclidean sphere or hyperplane of R^n recovered from a lifted vector.
struct SphereOrPlane {
  enum class Kind { Sphere, Plane } kind = Kind::Sphere;
  Eigen::VectorXd centre;  // sphere
  double radius = 0.0;     // sphere
  int eps = 1;             // sphere coorientation
  Eigen::VectorXd normal;  // plane: {x : normal . x = offset}, |normal| = 1
  double offset = 0.0;     // plane
};

/// Back-map of a unit spacelike vector of R^{n+1,1}. Planes appear when the
/// last two coordinates agree to within tol relative.
SphereOrPlane sphere_unlift(const LorentzVector& v, double tol = 1e-9);

/// Back-map of a lightlike vector to a point of R^n; nullopt is the point at
/// infinity.
std::optional<Eigen::VectorXd> point_unlift(const LorentzVector& w, double tol = 1e-9);

/// Poincare-ball picture of a horosphere: its ideal point on the unit sphere
/// and the Euclidean radius of the tangent ball.
struct BallHorosphere {
  Eigen::VectorXd ideal_point;
  double euclidean_radius = 0.0;
};
BallHorosphere horosphere_to_ball(const Horosphere& h);
Horosphere horosphere_from_ball(const BallHorosphere& b);

/// Poincare-ball picture of a cooriented hyperplane: a sphere orthogonal to
/// the unit sphere (centre, radius) or a flat plane through the origin, plus
/// the sign needed to restore the coorientation.
struct BallHyperplane {
  bool through_origin = false;
  Eigen::VectorXd centre;  // or the unit normal when through_origin
  double radius = 0.0;
  int sign = 1;
};
BallHyperplane hyperplane_to_ball(const CoHyperplane& h);
CoHyperplane hyperplane_from_ball(const BallHyperplane& b);

}  // namespace lgram
