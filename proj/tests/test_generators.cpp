#include "lgram/error.hpp"
#include "lgram/generators.hpp"
#include "lgram/models.hpp"
#include "lgram/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace lgram;

namespace {

std::vector<LorentzVector> normals_of(const Configuration& c) {
  std::vector<LorentzVector> ns;
  for (const auto& h : c.hyperplanes) ns.push_back(h.normal());
  for (const auto& s : c.spheres) ns.push_back(sphere_lift(s).normal());
  return ns;
}

bool is_generic(GenKind k) {
  return k == GenKind::GenericPoints || k == GenKind::GenericHorospheres ||
         k == GenKind::GenericHyperplanes;
}

std::size_t object_count(const Configuration& c) {
  return c.points.size() + c.horospheres.size() + c.hyperplanes.size() + c.spheres.size();
}

}  // namespace

TEST(Rng, DeterministicAndInRange) {
  Rng a(5);
  Rng b(5);
  Rng c(6);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t x = a.next();
    EXPECT_EQ(x, b.next());
    differs |= x != c.next();
    const double u = a.uniform();
    b.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_TRUE(differs);
  Rng zero(0);
  EXPECT_NE(zero.next(), 0U);
}

TEST(Rng, NormalMoments) {
  Rng r(11);
  double sum = 0.0;
  double sq = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const double x = r.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / m, 0.0, 0.01);
  EXPECT_NEAR(sq / m, 1.0, 0.02);
  const Eigen::VectorXd d = r.direction(4);
  EXPECT_NEAR(d.norm(), 1.0, 1e-15);
}

TEST(Kinds, NamesRoundTrip) {
  EXPECT_EQ(all_kinds().size(), 13U);
  for (GenKind k : all_kinds()) EXPECT_EQ(parse_kind(kind_name(k)), k);
  try {
    parse_kind("no_such_kind");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleParams);
  }
  EXPECT_EQ(default_count(GenKind::PointsOnHypersphere, 3), 5);
  EXPECT_EQ(default_count(GenKind::SpheresThroughPoint, 2), 4);
  EXPECT_EQ(default_count(GenKind::GenericHorospheres, 3), 4);
  EXPECT_EQ(default_count(GenKind::HyperplanesOrthogonalEquallyInclined, 2), 3);
}

TEST(Generate, Deterministic) {
  for (GenKind k : all_kinds()) {
    const GenSpec spec{k, 3, std::nullopt, 99, {}};
    const Configuration a = generate(spec);
    const Configuration b = generate(spec);
    ASSERT_EQ(object_count(a), object_count(b));
    EXPECT_EQ(object_count(a), static_cast<std::size_t>(default_count(k, 3))) << kind_name(k);
    for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].rep(), b.points[i].rep());
    for (std::size_t i = 0; i < a.horospheres.size(); ++i) {
      EXPECT_EQ(a.horospheres[i].rep(), b.horospheres[i].rep());
    }
    for (std::size_t i = 0; i < a.hyperplanes.size(); ++i) {
      EXPECT_EQ(a.hyperplanes[i].normal(), b.hyperplanes[i].normal());
    }
    for (std::size_t i = 0; i < a.spheres.size(); ++i) {
      EXPECT_EQ(a.spheres[i].centre(), b.spheres[i].centre());
      EXPECT_EQ(a.spheres[i].radius(), b.spheres[i].radius());
    }
  }
}

TEST(Generate, PointsLieOnTheirSurface) {
  for (GenKind k : {GenKind::PointsOnHorosphere, GenKind::PointsOnHypersphere,
                    GenKind::PointsOnHyperplane, GenKind::PointsOnEquidistant}) {
    for (int n = 2; n <= 4; ++n) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Configuration c = generate({k, n, std::nullopt, seed, {}});
        ASSERT_TRUE(c.truth.surface.has_value());
        for (const auto& p : c.points) {
          EXPECT_NEAR(norm_sq(p.rep()), -1.0, 1e-10 * (1 + p.rep().sup_norm()));
          EXPECT_LE(membership_residual(*c.truth.surface, p), 1e-10 * (1 + p.rep().sup_norm()))
              << kind_name(k);
        }
      }
    }
  }
}

TEST(Generate, HypersphereExample) {
  const Configuration c =
      generate({GenKind::PointsOnHypersphere, 2, 4, 7, {{"radius", 1.0}}});
  ASSERT_EQ(c.points.size(), 4U);
  const auto& s = std::get<Hypersphere>(*c.truth.surface);
  EXPECT_DOUBLE_EQ(s.radius(), 1.0);
  for (const auto& p : c.points) EXPECT_TRUE(contains(*c.truth.surface, p, 1e-12));
}

TEST(Generate, HorospheresOnBoundary) {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Configuration c =
          generate({GenKind::HorospheresOnHyperplaneBoundary, n, std::nullopt, seed, {}});
      ASSERT_TRUE(c.truth.boundary.has_value());
      for (const auto& h : c.horospheres) {
        EXPECT_NEAR(norm_sq(h.rep()), 0.0, 1e-12 * h.rep().sup_norm() * h.rep().sup_norm());
        EXPECT_LE(std::abs(inner(h.rep(), c.truth.boundary->normal())), 1e-12 * h.rep().sup_norm());
      }
    }
  }
}

TEST(Generate, CaseyTruthWitnessesPass) {
  for (GenKind k : {GenKind::HyperplanesTangentAtInfinity, GenKind::HyperplanesCommonIdealPoint,
                    GenKind::HyperplanesOrthogonalEquallyInclined, GenKind::SpheresTangentToCircle,
                    GenKind::SpheresThroughPoint}) {
    for (int n = 2; n <= 3; ++n) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Configuration c = generate({k, n, std::nullopt, seed, {}});
        ASSERT_TRUE(c.truth.casey.has_value());
        const auto ns = normals_of(c);
        for (const auto& v : ns) EXPECT_NEAR(norm_sq(v), 1.0, 1e-12);
        const WitnessCheck w = casey_witness_check(*c.truth.casey, ns, 1e-10);
        EXPECT_TRUE(w.pass) << kind_name(k) << " residual " << w.residual;
      }
    }
  }
}

TEST(Generate, OrthEqualLambdaParameter) {
  const Configuration c =
      generate({GenKind::HyperplanesOrthogonalEquallyInclined, 3, std::nullopt, 4, {{"lambda", 0.3}}});
  EXPECT_DOUBLE_EQ(c.truth.casey->lambda, 0.3);
  for (double bad : {1.0, 1.5, -0.1}) {
    try {
      generate({GenKind::HyperplanesOrthogonalEquallyInclined, 3, std::nullopt, 4, {{"lambda", bad}}});
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InfeasibleParams);
    }
  }
}

TEST(Generate, GenericKindsAreNonDegenerate) {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Configuration p = generate({GenKind::GenericPoints, n, std::nullopt, seed, {}});
      EXPECT_FALSE(ptolemy2_test(p.points).is_degenerate);
      const Configuration h = generate({GenKind::GenericHorospheres, n, std::nullopt, seed, {}});
      EXPECT_FALSE(penner_test(h.horospheres).verdict.is_degenerate);
      const Configuration c = generate({GenKind::GenericHyperplanes, n, std::nullopt, seed, {}});
      EXPECT_FALSE(casey_test(c.hyperplanes).verdict.is_degenerate);
      EXPECT_FALSE(p.truth.surface || h.truth.boundary || c.truth.casey);
    }
  }
}

TEST(Perturb, ZeroIsIdentity) {
  for (GenKind k : all_kinds()) {
    const Configuration c = generate({k, 2, std::nullopt, 3, {}});
    const Configuration p = perturb(c, 0.0, 17);
    for (std::size_t i = 0; i < c.points.size(); ++i) EXPECT_EQ(c.points[i].rep(), p.points[i].rep());
    for (std::size_t i = 0; i < c.hyperplanes.size(); ++i) {
      EXPECT_EQ(c.hyperplanes[i].normal(), p.hyperplanes[i].normal());
    }
    EXPECT_EQ(c.truth.casey.has_value(), p.truth.casey.has_value());
  }
}

TEST(Perturb, KeepsInvariantsAndBreaksConstraint) {
  int broken = 0;
  int total = 0;
  for (GenKind k : all_kinds()) {
    if (is_generic(k)) continue;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Configuration c = generate({k, 3, std::nullopt, seed, {}});
      const Configuration p = perturb(c, 1e-2, seed + 100);
      EXPECT_FALSE(p.truth.surface || p.truth.boundary || p.truth.casey);
      for (const auto& x : p.points) EXPECT_NEAR(norm_sq(x.rep()), -1.0, 1e-10 * (1 + x.rep().sup_norm()));
      for (const auto& h : p.horospheres) {
        EXPECT_NEAR(norm_sq(h.rep()), 0.0, 1e-10 * h.rep().sup_norm() * h.rep().sup_norm());
      }
      for (const auto& h : p.hyperplanes) EXPECT_NEAR(norm_sq(h.normal()), 1.0, 1e-12);
      for (const auto& s : p.spheres) EXPECT_GT(s.radius(), 0.0);
      ++total;
      bool degenerate = false;
      if (!p.points.empty()) degenerate = ptolemy2_test(p.points).is_degenerate;
      if (!p.horospheres.empty()) degenerate = penner_test(p.horospheres).verdict.is_degenerate;
      if (!p.hyperplanes.empty()) degenerate = casey_test(p.hyperplanes).verdict.is_degenerate;
      if (!p.spheres.empty()) degenerate = corollary_d_test(p.spheres).verdict.is_degenerate;
      if (!degenerate) ++broken;
    }
  }
  EXPECT_GE(broken, total - 1);
}

TEST(Generate, BoundaryHorospheresUseBothIdealPointsInTheLine) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Configuration c =
        generate({GenKind::HorospheresOnHyperplaneBoundary, 2, std::nullopt, seed, {}});
    const PennerResult r = penner_test(c.horospheres);
    EXPECT_FALSE(r.same_centre);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_LE(r.witness_residual, 1e-12);
  }
}
