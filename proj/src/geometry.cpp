#include "lgram/geometry.hpp"

#include "lgram/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lgram {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw Error(ErrorCode::DimensionMismatch, what);
}

}  // namespace

namespace detail {

double clamp_below(double x, double lo, const char* what) {
  if (x >= lo) return x;
  if (x >= lo - 1e-7) return lo;
  throw Error(ErrorCode::DomainError,
              std::string(what) + " argument " + std::to_string(x) + " outside domain");
}

}  // namespace detail

HPoint::HPoint(LorentzVector rep) : rep_(std::move(rep)) {
  const double q = norm_sq(rep_);
  const double scale = 1.0 + rep_.sup_norm() * rep_.sup_norm();
  if (std::abs(q + 1.0) > 1e-9 * scale || !(rep_.last() > 0)) {
    throw Error(ErrorCode::InvalidObject,
                "point is not on the hyperboloid (<x,x> = " + std::to_string(q) + ")");
  }
}

HPoint HPoint::from_spatial(const Eigen::VectorXd& x) {
  Eigen::VectorXd c(x.size() + 1);
  c.head(x.size()) = x;
  c[x.size()] = std::sqrt(1.0 + x.squaredNorm());
  return HPoint(LorentzVector(std::move(c)));
}

Horosphere::Horosphere(LorentzVector rep) : rep_(std::move(rep)) {
  if (classify(rep_ / rep_.sup_norm(), 1e-9) != SignClass::Lightlike || !(rep_.last() > 0)) {
    throw Error(ErrorCode::InvalidObject, "horosphere rep must be forward lightlike");
  }
}

CoHyperplane::CoHyperplane(LorentzVector normal) : normal_(std::move(normal)) {
  const double q = norm_sq(normal_);
  const double scale = 1.0 + normal_.sup_norm() * normal_.sup_norm();
  if (std::abs(q - 1.0) > 1e-9 * scale) {
    throw Error(ErrorCode::NotUnitNormal,
                "hyperplane normal must be unit spacelike (<n,n> = " + std::to_string(q) + ")");
  }
}

Hypersphere::Hypersphere(HPoint centre, double radius)
    : centre_(std::move(centre)), radius_(radius) {
  if (!(radius_ > 0) || !std::isfinite(radius_)) {
    throw Error(ErrorCode::InvalidObject, "hypersphere radius must be positive");
  }
}

EquidistantBranch::EquidistantBranch(LorentzVector normal, double offset)
    : normal_(std::move(normal)), offset_(offset) {
  const double q = norm_sq(normal_);
  if (std::abs(q - 1.0) > 1e-9 * (1.0 + normal_.sup_norm() * normal_.sup_norm())) {
    throw Error(ErrorCode::NotUnitNormal, "equidistant normal must be unit spacelike");
  }
  if (!(std::abs(offset_) > 0) || !std::isfinite(offset_)) {
    throw Error(ErrorCode::InvalidObject, "equidistant offset must be nonzero");
  }
}

CoSphereE::CoSphereE(Eigen::VectorXd centre, double radius, int eps)
    : centre_(std::move(centre)), radius_(radius), eps_(eps) {
  if (!(radius_ > 0) || !std::isfinite(radius_)) {
    throw Error(ErrorCode::InvalidObject, "sphere radius must be positive");
  }
  if (eps_ != 1 && eps_ != -1) throw Error(ErrorCode::InvalidObject, "eps must be +1 or -1");
  if (centre_.size() < 1 || !centre_.allFinite()) {
    throw Error(ErrorCode::InvalidObject, "sphere centre must be finite");
  }
}

double distance(const HPoint& p, const HPoint& q) {
  return std::acosh(std::max(1.0, -inner(p.rep(), q.rep())));
}

double half_dist_sinh_sq(const HPoint& p, const HPoint& q) {
  return std::max(0.0, -0.5 * (inner(p.rep(), q.rep()) + 1.0));
}

bool same_centre(const Horosphere& a, const Horosphere& b) {
  require_dim(a.rep().size(), b.rep().size(), "horosphere dimensions differ");
  // reps are forward, so the sign is already fixed by the last coordinate
  const Eigen::VectorXd x = a.rep().coords() / a.rep().sup_norm();
  const Eigen::VectorXd y = b.rep().coords() / b.rep().sup_norm();
  return (x - y).cwiseAbs().maxCoeff() <= 1e-9;
}

double lambda_length(const Horosphere& a, const Horosphere& b) {
  if (same_centre(a, b)) return 0.0;
  return std::sqrt(std::max(0.0, -inner(a.rep(), b.rep())));
}

double sigma(const CoHyperplane& a, const CoHyperplane& b) {
  return 0.5 * (inner(a.normal(), b.normal()) - 1.0);
}

SigmaDecoded sigma_decode(double value, double tol) {
  if (std::abs(value) <= tol) return {SigmaRelation::TangentAtInfinitySame};
  if (std::abs(value + 1.0) <= tol) return {SigmaRelation::TangentAtInfinityOpposite};
  if (value > 0) {
    return {SigmaRelation::DisjointSame, 0.0, 2.0 * std::asinh(std::sqrt(value))};
  }
  if (value < -1.0) {
    return {SigmaRelation::DisjointOpposite, 0.0, 2.0 * std::acosh(std::sqrt(-value))};
  }
  return {SigmaRelation::Intersecting, 2.0 * std::asin(std::sqrt(-value)), 0.0};
}

double inversive_distance(const CoSphereE& a, const CoSphereE& b) {
  require_dim(a.centre().size(), b.centre().size(), "sphere dimensions differ");
  const double d2 = (a.centre() - b.centre()).squaredNorm();
  const double ra = a.radius();
  const double rb = b.radius();
  return a.eps() * b.eps() * (d2 - ra * ra - rb * rb) / (2.0 * ra * rb);
}

double tau(const CoSphereE& a, const CoSphereE& b) {
  require_dim(a.centre().size(), b.centre().size(), "sphere dimensions differ");
  const double ee = a.eps() * b.eps();
  const double d2 = (a.centre() - b.centre()).squaredNorm();
  const double dr = a.radius() - ee * b.radius();
  return ee * (d2 - dr * dr);
}

double tangent_length(const CoSphereE& a, const CoSphereE& b) {
  require_dim(a.centre().size(), b.centre().size(), "sphere dimensions differ");
  const double ee = a.eps() * b.eps();
  const double d2 = (a.centre() - b.centre()).squaredNorm();
  const double dr = a.radius() - ee * b.radius();
  const double rad = d2 - dr * dr;
  const double scale = d2 + dr * dr;
  if (rad < -1e-12 * std::max(scale, 1.0)) {
    throw Error(ErrorCode::NoCommonTangent,
                "no common tangent (radicand " + std::to_string(rad) + ")");
  }
  return std::sqrt(std::max(0.0, rad));
}

double membership_residual(const Surface& surface, const HPoint& p) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Horosphere>) {
          return std::abs(inner(p.rep(), s.rep()) + kInvSqrt2);
        } else if constexpr (std::is_same_v<T, CoHyperplane>) {
          return std::abs(inner(p.rep(), s.normal()));
        } else if constexpr (std::is_same_v<T, Hypersphere>) {
          return std::abs(-inner(p.rep(), s.centre().rep()) - std::cosh(s.radius()));
        } else {
          return std::abs(inner(p.rep(), s.normal()) - s.offset());
        }
      },
      surface);
}

bool contains(const Surface& surface, const HPoint& p, double tol) {
  return membership_residual(surface, p) <= tol;
}

}  // namespace lgram
