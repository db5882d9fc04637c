#include "lgram/error.hpp"
#include "lgram/geometry.hpp"
#include "lgram/models.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace lgram;

namespace {

const double kS1 = std::sinh(1.0);
const double kC1 = std::cosh(1.0);

HPoint on_geodesic(double t) { return HPoint(LorentzVector{0.0, std::sinh(t), std::cosh(t)}); }

}  // namespace

TEST(Objects, Invariants) {
  EXPECT_THROW(HPoint(LorentzVector{0, 0, -1}), Error);
  EXPECT_THROW(HPoint(LorentzVector{1, 0, 1}), Error);
  EXPECT_THROW(Horosphere(LorentzVector{0, 1, -1}), Error);
  EXPECT_THROW(Horosphere(LorentzVector{0, 0, 1}), Error);
  EXPECT_THROW(CoHyperplane(LorentzVector{2, 0, 0}), Error);
  EXPECT_THROW(Hypersphere(on_geodesic(0), -1.0), Error);
  EXPECT_THROW(EquidistantBranch(LorentzVector{1, 0, 0}, 0.0), Error);
  EXPECT_THROW(CoSphereE(Eigen::Vector2d(0, 0), 1.0, 0), Error);
  EXPECT_THROW(CoSphereE(Eigen::Vector2d(0, 0), 0.0, 1), Error);
  const HPoint p = HPoint::from_spatial(Eigen::Vector2d(0.3, -2.0));
  EXPECT_NEAR(norm_sq(p.rep()), -1.0, 1e-14);
}

TEST(Distance, Examples) {
  EXPECT_DOUBLE_EQ(distance(on_geodesic(0), on_geodesic(0)), 0.0);
  EXPECT_NEAR(distance(on_geodesic(0), on_geodesic(1)), 1.0, 1e-14);
  EXPECT_NEAR(half_dist_sinh_sq(on_geodesic(0.4), on_geodesic(0.4)), 0.0, 1e-15);
  EXPECT_NEAR(half_dist_sinh_sq(on_geodesic(0), on_geodesic(1)), (kC1 - 1.0) / 2.0, 1e-15);
  EXPECT_NEAR(half_dist_sinh_sq(on_geodesic(0), on_geodesic(1)), 0.2715403, 1e-7);
}

TEST(Distance, AgreesWithBallMetric) {
  oracle::Sampler s(11);
  for (int t = 0; t < 200; ++t) {
    const HPoint p(LorentzVector(s.hpoint(3)));
    const HPoint q(LorentzVector(s.hpoint(3)));
    const double d = distance(p, q);
    EXPECT_NEAR(d, ball_distance(hyperboloid_to_ball(p), hyperboloid_to_ball(q)), 1e-10 * (1 + d));
    EXPECT_NEAR(half_dist_sinh_sq(p, q), std::pow(std::sinh(d / 2), 2), 1e-10 * std::cosh(d));
  }
}

TEST(LambdaLength, Examples) {
  const Horosphere a(LorentzVector{0, 1, 1});
  const Horosphere b(LorentzVector{0, -1, 1});
  EXPECT_DOUBLE_EQ(lambda_length(a, a), 0.0);
  EXPECT_NEAR(lambda_length(a, b), std::sqrt(2.0), 1e-15);
}

TEST(LambdaLength, MatchesHorosphereGapAlongGeodesic) {
  // gap measured on the geodesic joining the two centres, by bisection
  oracle::Sampler s(12);
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd a = s.lightlike(2);
    const Eigen::VectorXd b = s.lightlike(2);
    const double ab = oracle::lorentz(a, b);
    const double norm = std::sqrt(-2.0 * ab);
    const auto gamma = [&](double u) -> Eigen::VectorXd {
      return (std::exp(u) * a + std::exp(-u) * b) / norm;
    };
    const double target = -1.0 / std::sqrt(2.0);
    const double t1 = oracle::bisect([&](double u) { return oracle::lorentz(gamma(u), a) - target; },
                                     -10, 10);
    const double t2 = oracle::bisect([&](double u) { return oracle::lorentz(gamma(u), b) - target; },
                                     -10, 10);
    const double delta = t1 - t2;
    const double lam = lambda_length(Horosphere(LorentzVector(a)), Horosphere(LorentzVector(b)));
    EXPECT_NEAR(lam, std::exp(delta / 2), 1e-8 * lam);
    // both crossing points really lie on their horospheres
    EXPECT_TRUE(contains(Horosphere(LorentzVector(a)), HPoint(LorentzVector(gamma(t1))), 1e-9));
  }
}

TEST(LambdaLength, SameCentreIsZero) {
  const Horosphere a(LorentzVector{0.6, 0.8, 1.0});
  const Horosphere b(LorentzVector{1.2, 1.6, 2.0});
  EXPECT_TRUE(same_centre(a, b));
  EXPECT_DOUBLE_EQ(lambda_length(a, b), 0.0);
}

TEST(Sigma, Examples) {
  const CoHyperplane h1(LorentzVector{1, 0, 0});
  const CoHyperplane h2(LorentzVector{0, 1, 0});
  EXPECT_DOUBLE_EQ(sigma(h1, h1), 0.0);
  EXPECT_DOUBLE_EQ(sigma(h1, h2), -0.5);
  EXPECT_NEAR(-0.5, -std::pow(std::sin(std::numbers::pi / 4), 2), 1e-15);
}

TEST(Sigma, DisjointPairMatchesCommonPerpendicular) {
  const CoHyperplane h1(LorentzVector{1, 0, 0});
  const CoHyperplane h2(LorentzVector{kC1, 0, kS1});
  // the curve (sinh t, 0, cosh t) is orthogonal to both; find its crossings
  const auto curve = [](double t) { return Eigen::Vector3d(std::sinh(t), 0, std::cosh(t)); };
  const auto n1 = h1.normal().coords();
  const auto n2 = h2.normal().coords();
  const double t1 = oracle::bisect([&](double t) { return oracle::lorentz(curve(t), n1); }, -5, 5);
  const double t2 = oracle::bisect([&](double t) { return oracle::lorentz(curve(t), n2); }, -5, 5);
  const double rho = distance(HPoint(LorentzVector(Eigen::VectorXd(curve(t1)))),
                              HPoint(LorentzVector(Eigen::VectorXd(curve(t2)))));
  EXPECT_NEAR(rho, 1.0, 1e-12);
  EXPECT_NEAR(sigma(h1, h2), std::pow(std::sinh(rho / 2), 2), 1e-12);
  EXPECT_NEAR(sigma(h1, h2), (kC1 - 1) / 2, 1e-15);
}

TEST(SigmaDecode, Examples) {
  const SigmaDecoded a = sigma_decode(-0.5);
  EXPECT_EQ(a.relation, SigmaRelation::Intersecting);
  EXPECT_NEAR(a.angle, std::numbers::pi / 2, 1e-14);
  EXPECT_EQ(sigma_decode(0.0).relation, SigmaRelation::TangentAtInfinitySame);
  const SigmaDecoded c = sigma_decode(std::pow(std::sinh(0.5), 2));
  EXPECT_EQ(c.relation, SigmaRelation::DisjointSame);
  EXPECT_NEAR(c.distance, 1.0, 1e-14);
  EXPECT_EQ(sigma_decode(-1.0).relation, SigmaRelation::TangentAtInfinityOpposite);
}

TEST(SigmaDecode, RoundTripAgainstInnerProduct) {
  oracle::Sampler s(13);
  for (int t = 0; t < 300; ++t) {
    const CoHyperplane a(LorentzVector(s.unit_spacelike(2)));
    const CoHyperplane b(LorentzVector(s.unit_spacelike(2)));
    const double ip = inner(a.normal(), b.normal());
    const SigmaDecoded d = sigma_decode(sigma(a, b));
    if (std::abs(ip) < 1.0) {
      EXPECT_EQ(d.relation, SigmaRelation::Intersecting);
      EXPECT_NEAR(std::cos(d.angle), ip, 1e-9);
    } else if (ip > 1.0) {
      EXPECT_EQ(d.relation, SigmaRelation::DisjointSame);
      EXPECT_NEAR(std::cosh(d.distance), ip, 1e-9 * ip);
    } else {
      EXPECT_EQ(d.relation, SigmaRelation::DisjointOpposite);
      EXPECT_NEAR(std::cosh(d.distance), -ip, 1e-9 * -ip);
    }
  }
}

TEST(Sigma, CoorientationFlip) {
  oracle::Sampler s(14);
  for (int t = 0; t < 100; ++t) {
    const CoHyperplane a(LorentzVector(s.unit_spacelike(3)));
    const CoHyperplane b(LorentzVector(s.unit_spacelike(3)));
    const double ip = inner(a.normal(), b.normal());
    EXPECT_NEAR(sigma(a.flipped(), b), (-ip - 1) / 2, 1e-12);
    EXPECT_NEAR(sigma(a.flipped(), b.flipped()), sigma(a, b), 1e-12);
  }
}

TEST(Inversive, Examples) {
  const CoSphereE a(Eigen::Vector2d(0, 0), 1.0);
  const CoSphereE b(Eigen::Vector2d(2, 0), 1.0);
  EXPECT_DOUBLE_EQ(inversive_distance(a, b), 1.0);
  const CoSphereE c(Eigen::Vector2d(1, 1), 1.0);
  EXPECT_NEAR(inversive_distance(a, c), 0.0, 1e-15);
  const CoSphereE big(Eigen::Vector2d(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(inversive_distance(a, big), -1.25);
}

TEST(Tau, Examples) {
  const CoSphereE a(Eigen::Vector2d(0, 0), 1.0);
  const CoSphereE b(Eigen::Vector2d(3, 0), 1.0);
  EXPECT_DOUBLE_EQ(tau(a, a), 0.0);
  EXPECT_DOUBLE_EQ(tau(a, b), 9.0);
  EXPECT_DOUBLE_EQ(tau(a, b.with_eps(-1)), -5.0);
  EXPECT_DOUBLE_EQ(tangent_length(a, b), 3.0);
  EXPECT_DOUBLE_EQ(tangent_length(a, b.with_eps(-1)), std::sqrt(5.0));
  const CoSphereE c(Eigen::Vector2d(0, 0), 0.5);
  const CoSphereE d(Eigen::Vector2d(2.5, 0), 2.0);
  EXPECT_NEAR(tangent_length(c, d), 2 * std::sqrt(0.5 * 2.0), 1e-15);
}

TEST(Tau, NoCommonTangent) {
  const CoSphereE a(Eigen::Vector2d(0, 0), 1.0);
  const CoSphereE b(Eigen::Vector2d(1, 0), 1.0, -1);
  try {
    tangent_length(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoCommonTangent);
  }
}

TEST(Tau, ConsistentWithInversiveDistanceAndLift) {
  oracle::Sampler s(15);
  for (int t = 0; t < 200; ++t) {
    const CoSphereE a(s.gaussian(2), s.uniform(0.1, 2), t % 2 ? 1 : -1);
    const CoSphereE b(s.gaussian(2), s.uniform(0.1, 2), t % 3 ? 1 : -1);
    const double rr = a.radius() * b.radius();
    const double tv = tau(a, b);
    const double scale = std::abs(tv) + rr;
    EXPECT_NEAR(tv, 2 * rr * (inversive_distance(a, b) + 1), 1e-9 * scale);
    EXPECT_NEAR(tv, -4 * rr * sigma(sphere_lift(a), sphere_lift(b)), 1e-9 * scale);
    const double rad = a.eps() * b.eps() * tv;
    if (rad > 1e-9) EXPECT_NEAR(std::pow(tangent_length(a, b), 2), rad, 1e-9 * scale);
  }
}

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(CoHyperplane(LorentzVector{1, 0, 0}), on_geodesic(0)));
  const double t = std::log(std::sqrt(2.0));
  EXPECT_TRUE(contains(Horosphere(LorentzVector{0, 1, 1}), on_geodesic(t)));
  EXPECT_TRUE(contains(Hypersphere(on_geodesic(0), 1.0), on_geodesic(1)));
  EXPECT_FALSE(contains(Hypersphere(on_geodesic(0), 1.0), on_geodesic(1.1)));
  const double s = std::asinh(0.5);
  const HPoint p(LorentzVector{std::sinh(s), 0, std::cosh(s)});
  EXPECT_TRUE(contains(EquidistantBranch(LorentzVector{1, 0, 0}, 0.5), p));
}

TEST(Clamp, DomainPolicy) {
  EXPECT_DOUBLE_EQ(detail::clamp_below(1.0 - 1e-9, 1.0, "acosh"), 1.0);
  EXPECT_THROW(detail::clamp_below(0.9, 1.0, "acosh"), Error);
}
