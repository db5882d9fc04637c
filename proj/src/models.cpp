#include "lgram/models.hpp"

#include "lgram/error.hpp"

#include <array>
#include <cmath>

namespace lgram {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct HorosphereFrame {
  Eigen::VectorXd v;        // rep
  Eigen::VectorXd v_dual;   // lightlike, <v, v_dual> = -1
  Eigen::MatrixXd tangent;  // orthonormal spacelike columns orthogonal to both
};

HorosphereFrame frame_of(const Horosphere& h) {
  const Eigen::VectorXd& v = h.rep().coords();
  const Eigen::Index dim = v.size();
  const double k = v[dim - 1];
  Eigen::VectorXd dual = -v;
  dual[dim - 1] = k;
  dual /= 2.0 * k * k;
  const std::array<Eigen::VectorXd, 2> span{Eigen::VectorXd(v + dual),
                                            Eigen::VectorXd(v - dual)};
  return {v, dual, detail::orthonormal_complement(span, dim)};
}

}  // namespace

BallPoint::BallPoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (!coords_.allFinite() || coords_.size() < 2) {
    throw Error(ErrorCode::InvalidObject, "ball point needs finite coordinates, n >= 2");
  }
  if (coords_.norm() >= 1.0 - 1e-12) {
    throw Error(ErrorCode::OutsideBall, "point is not inside the open unit ball");
  }
}

HalfSpacePoint::HalfSpacePoint(Eigen::VectorXd z, double t) : z_(std::move(z)), t_(t) {
  if (!(t_ > 0) || !std::isfinite(t_) || !z_.allFinite()) {
    throw Error(ErrorCode::InvalidObject, "half-space point needs t > 0");
  }
}

BallPoint hyperboloid_to_ball(const HPoint& p) {
  const Eigen::VectorXd& x = p.rep().coords();
  const Eigen::Index n = x.size() - 1;
  return BallPoint(Eigen::VectorXd(x.head(n) / (1.0 + x[n])));
}

HPoint ball_to_hyperboloid(const BallPoint& b) {
  const Eigen::VectorXd& y = b.coords();
  const double s = y.squaredNorm();
  Eigen::VectorXd x(y.size() + 1);
  x.head(y.size()) = 2.0 * y / (1.0 - s);
  x[y.size()] = (1.0 + s) / (1.0 - s);
  return HPoint(LorentzVector(std::move(x)));
}

double ball_distance(const BallPoint& a, const BallPoint& b) {
  const double d2 = (a.coords() - b.coords()).squaredNorm();
  const double den = (1.0 - a.coords().squaredNorm()) * (1.0 - b.coords().squaredNorm());
  return std::acosh(1.0 + 2.0 * d2 / den);
}

HalfSpacePoint hyperboloid_to_halfspace(const HPoint& p) {
  const Eigen::VectorXd& x = p.rep().coords();
  const Eigen::Index n = x.size() - 1;
  const double t = 1.0 / (x[n] - x[n - 1]);
  return HalfSpacePoint(Eigen::VectorXd(t * x.head(n - 1)), t);
}

HPoint halfspace_to_hyperboloid(const HalfSpacePoint& h) {
  const Eigen::VectorXd& z = h.z();
  const double t = h.t();
  const double z2 = z.squaredNorm();
  const Eigen::Index n = z.size() + 1;
  Eigen::VectorXd x(n + 1);
  x.head(n - 1) = z / t;
  x[n - 1] = (t * t + z2 - 1.0) / (2.0 * t);
  x[n] = (1.0 + z2 + t * t) / (2.0 * t);
  return HPoint(LorentzVector(std::move(x)));
}

HalfSpacePoint ball_to_halfspace(const BallPoint& b) {
  return hyperboloid_to_halfspace(ball_to_hyperboloid(b));
}

BallPoint halfspace_to_ball(const HalfSpacePoint& h) {
  return hyperboloid_to_ball(halfspace_to_hyperboloid(h));
}

Eigen::VectorXd horosphere_chart(const Horosphere& h, const HPoint& p, double tol) {
  if (h.n() != p.n()) throw Error(ErrorCode::DimensionMismatch, "horosphere_chart");
  const double scale = 1.0 + p.rep().sup_norm() * h.rep().sup_norm();
  if (membership_residual(h, p) > tol * scale) {
    throw Error(ErrorCode::HypothesisViolated, "point is not on the horosphere");
  }
  const HorosphereFrame f = frame_of(h);
  Eigen::VectorXd z(f.tangent.cols());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    z[j] = detail::dot(p.rep().coords(), f.tangent.col(j));
  }
  return z;
}

HPoint horosphere_chart_inverse(const Horosphere& h, const Eigen::VectorXd& z) {
  const HorosphereFrame f = frame_of(h);
  if (z.size() != f.tangent.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "chart coordinates must have length n-1");
  }
  const double b = kInvSqrt2;
  const double a = (1.0 + z.squaredNorm()) * kInvSqrt2;
  Eigen::VectorXd x = a * f.v + b * f.v_dual + f.tangent * z;
  return HPoint(LorentzVector(std::move(x)));
}

CoHyperplane sphere_lift(const CoSphereE& s) {
  const Eigen::VectorXd& c = s.centre();
  const double r = s.radius();
  const double a = c.squaredNorm() - r * r;
  Eigen::VectorXd v(c.size() + 2);
  v.head(c.size()) = c;
  v[c.size()] = 0.5 * (a - 1.0);
  v[c.size() + 1] = 0.5 * (a + 1.0);
  v *= s.eps() / r;
  return CoHyperplane(LorentzVector(std::move(v)));
}

LorentzVector point_lift(const Eigen::VectorXd& x) {
  const double x2 = x.squaredNorm();
  Eigen::VectorXd v(x.size() + 2);
  v.head(x.size()) = x;
  v[x.size()] = 0.5 * (x2 - 1.0);
  v[x.size() + 1] = 0.5 * (x2 + 1.0);
  return LorentzVector(std::move(v));
}

SphereOrPlane sphere_unlift(const LorentzVector& v, double tol) {
  const Eigen::Index n = v.size() - 2;
  const double p = v[n];
  const double q = v[n + 1];
  const Eigen::VectorXd a = v.coords().head(n);
  SphereOrPlane out;
  const double gap = q - p;
  if (std::abs(gap) <= tol * v.sup_norm()) {
    out.kind = SphereOrPlane::Kind::Plane;
    const double len = a.norm();
    if (!(len > 0)) throw Error(ErrorCode::DomainError, "vector lifts no sphere or plane");
    out.normal = a / len;
    out.offset = 0.5 * (p + q) / len;
    return out;
  }
  out.kind = SphereOrPlane::Kind::Sphere;
  out.eps = gap > 0 ? 1 : -1;
  out.radius = 1.0 / std::abs(gap);
  out.centre = out.eps * out.radius * a;
  return out;
}

std::optional<Eigen::VectorXd> point_unlift(const LorentzVector& w, double tol) {
  const Eigen::Index n = w.size() - 2;
  const double gap = w[n + 1] - w[n];
  if (std::abs(gap) <= tol * w.sup_norm()) return std::nullopt;
  return Eigen::VectorXd(w.coords().head(n) / gap);
}

BallHorosphere horosphere_to_ball(const Horosphere& h) {
  const Eigen::VectorXd& v = h.rep().coords();
  const Eigen::Index n = v.size() - 1;
  const double k = v[n];
  const double t = std::log(k / kInvSqrt2);
  const double rho = std::tanh(0.5 * t);
  return {Eigen::VectorXd(v.head(n) / k), 0.5 * (1.0 - rho)};
}

Horosphere horosphere_from_ball(const BallHorosphere& b) {
  if (!(b.euclidean_radius > 0) || !(b.euclidean_radius < 1)) {
    throw Error(ErrorCode::InvalidObject, "horoball radius must lie in (0, 1)");
  }
  const double rho = 1.0 - 2.0 * b.euclidean_radius;
  const double k = std::exp(2.0 * std::atanh(rho)) * kInvSqrt2;
  const Eigen::VectorXd d = b.ideal_point.normalized();
  Eigen::VectorXd v(d.size() + 1);
  v.head(d.size()) = k * d;
  v[d.size()] = k;
  return Horosphere(LorentzVector(std::move(v)));
}

BallHyperplane hyperplane_to_ball(const CoHyperplane& h) {
  const Eigen::VectorXd& v = h.normal().coords();
  const Eigen::Index n = v.size() - 1;
  const double b = v[n];
  BallHyperplane out;
  if (std::abs(b) <= 1e-12 * h.normal().sup_norm()) {
    out.through_origin = true;
    out.centre = v.head(n).normalized();
    return out;
  }
  out.centre = v.head(n) / b;
  out.radius = 1.0 / std::abs(b);
  out.sign = b > 0 ? 1 : -1;
  return out;
}

CoHyperplane hyperplane_from_ball(const BallHyperplane& bh) {
  const Eigen::Index n = bh.centre.size();
  Eigen::VectorXd v(n + 1);
  if (bh.through_origin) {
    v.head(n) = bh.centre.normalized();
    v[n] = 0.0;
  } else {
    const double b = bh.sign / bh.radius;
    v.head(n) = bh.centre * b;
    v[n] = b;
  }
  return CoHyperplane(LorentzVector(std::move(v)));
}

}  // namespace lgram
