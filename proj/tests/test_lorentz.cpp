#include "lgram/error.hpp"
#include "lgram/lorentz.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace lgram;

namespace {

Eigen::MatrixXd circulant() {
  Eigen::MatrixXd m(4, 4);
  m << 0, 1, 2, 1, 1, 0, 1, 2, 2, 1, 0, 1, 1, 2, 1, 0;
  return m;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an lgram::Error";
  return ErrorCode::SchemaViolation;
}

}  // namespace

TEST(LorentzVector, RejectsShortOrNonFinite) {
  EXPECT_EQ(code_of([] { LorentzVector{1.0, 2.0}; }), ErrorCode::InvalidVector);
  EXPECT_EQ(code_of([] { LorentzVector{1.0, NAN, 0.0}; }), ErrorCode::InvalidVector);
  EXPECT_EQ(LorentzVector({1.0, 2.0, 3.0}).n(), 2);
}

TEST(Inner, BasisAndLightlikeExamples) {
  EXPECT_DOUBLE_EQ(inner({1, 0, 0}, {1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(inner({0, 0, 1}, {0, 0, 1}), -1.0);
  EXPECT_DOUBLE_EQ(inner({0, 1, 1}, {0, -1, 1}), -2.0);
}

TEST(Inner, DimensionMismatch) {
  EXPECT_EQ(code_of([] { inner({1, 0, 0}, {1, 0, 0, 0}); }), ErrorCode::DimensionMismatch);
}

TEST(Inner, SymmetricBilinear) {
  oracle::Sampler s(1);
  for (int t = 0; t < 100; ++t) {
    const LorentzVector x(s.gaussian(4));
    const LorentzVector y(s.gaussian(4));
    const LorentzVector z(s.gaussian(4));
    const double a = s.normal();
    EXPECT_NEAR(inner(x, y), inner(y, x), 1e-14);
    EXPECT_NEAR(inner(a * x + z, y), a * inner(x, y) + inner(z, y), 1e-12);
    EXPECT_NEAR(inner(x, y), oracle::lorentz(x.coords(), y.coords()), 1e-13);
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify({0, 1, 1}, 1e-12), SignClass::Lightlike);
  EXPECT_EQ(classify({0, 0, 1}, 1e-12), SignClass::Timelike);
  EXPECT_EQ(classify({1, 0, 0, 0}, 1e-12), SignClass::Spacelike);
}

TEST(Classify, ScaleInvariant) {
  oracle::Sampler s(2);
  for (int t = 0; t < 100; ++t) {
    const LorentzVector x(s.gaussian(3));
    const SignClass c = classify(x);
    for (double k : {1e-3, 0.5, 7.0, 1e3}) EXPECT_EQ(classify(k * x), c);
  }
}

TEST(Gram, Examples) {
  const std::vector<LorentzVector> basis{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const GramMatrix g = gram(basis);
  EXPECT_EQ(g.entries, Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix());
  EXPECT_EQ(g.n_ambient, 2);

  const std::vector<LorentzVector> one{{0, 1, 1}};
  EXPECT_EQ(gram(one).entries, Eigen::MatrixXd::Zero(1, 1));

  const std::vector<LorentzVector> two{{0, 1, 1}, {0, -1, 1}};
  Eigen::Matrix2d expected;
  expected << 0, -2, -2, 0;
  EXPECT_EQ(gram(two).entries, Eigen::MatrixXd(expected));
}

TEST(Degeneracy, Examples) {
  const DegeneracyVerdict a = degeneracy(Eigen::MatrixXd(Eigen::Vector3d(1, 1, -1).asDiagonal()));
  EXPECT_FALSE(a.is_degenerate);
  EXPECT_NEAR(a.det_value, -1.0, 1e-15);
  EXPECT_FALSE(a.kernel.has_value());

  Eigen::MatrixXd b(2, 2);
  b << 0, -2, -2, 0;
  const DegeneracyVerdict vb = degeneracy(b);
  EXPECT_FALSE(vb.is_degenerate);
  EXPECT_NEAR(vb.det_value, -4.0, 1e-14);

  const DegeneracyVerdict c = degeneracy(circulant());
  ASSERT_TRUE(c.is_degenerate);
  ASSERT_TRUE(c.kernel.has_value());
  const Eigen::Vector4d expected(0.5, -0.5, 0.5, -0.5);
  EXPECT_LT((*c.kernel - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(c.det_value, 0.0, 1e-12);
  EXPECT_NEAR(c.sigma_max, 4.0, 1e-12);
}

TEST(Degeneracy, CirculantDeterminantAgreesWithCofactorExpansion) {
  EXPECT_NEAR(oracle::cofactor_det(circulant()), 0.0, 1e-14);
}

TEST(Degeneracy, NotSymmetric) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 2, 0;
  EXPECT_EQ(code_of([&] { degeneracy(m); }), ErrorCode::NotSymmetric);
}

TEST(Degeneracy, KernelCertificateOnRandomSingularMatrices) {
  oracle::Sampler s(3);
  for (int t = 0; t < 200; ++t) {
    const int m = 3 + t % 4;
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) q.col(i) = s.gaussian(m);
    Eigen::VectorXd d = s.gaussian(m);
    d[t % m] = 0.0;
    const Eigen::MatrixXd sym = q * d.asDiagonal() * q.transpose();
    const Eigen::MatrixXd mm = 0.5 * (sym + sym.transpose());
    const double tol = 1e-9;
    const DegeneracyVerdict v = degeneracy(mm, tol);
    EXPECT_LE(v.sigma_min, v.sigma_max);
    ASSERT_TRUE(v.is_degenerate);
    const Eigen::VectorXd& k = *v.kernel;
    EXPECT_NEAR(k.norm(), 1.0, 1e-12);
    EXPECT_LE((mm * k).cwiseAbs().maxCoeff(), tol * (v.sigma_max + 1.0) * k.cwiseAbs().maxCoeff());
  }
}

TEST(Degeneracy, VerdictInvariantUnderScaling) {
  oracle::Sampler s(4);
  for (int t = 0; t < 100; ++t) {
    std::vector<LorentzVector> vs;
    for (int i = 0; i < 4; ++i) vs.emplace_back(s.gaussian(4));
    if (t % 2 == 0) vs[3] = 0.3 * vs[0] - 1.7 * vs[1] + 0.2 * vs[2];
    const DegeneracyVerdict v = degeneracy(gram(vs));
    // a scale factor k moves sigma_min by k^2; keep samples whose margin survives k = 1e-3
    if (t % 2 == 1 && v.sigma_min < 1e-2) continue;
    const bool base = v.is_degenerate;
    EXPECT_EQ(base, t % 2 == 0);
    for (double k : {1e-3, 0.1, 10.0, 1e3}) {
      std::vector<LorentzVector> scaled;
      for (const auto& v : vs) scaled.push_back(k * v);
      EXPECT_EQ(degeneracy(gram(scaled)).is_degenerate, base) << "scale " << k;
    }
  }
}

TEST(NullSpace, MultiDimensionalKernel) {
  const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(3, 3);
  EXPECT_EQ(null_space(z).cols(), 3);
  const Eigen::MatrixXd ns = null_space(circulant());
  ASSERT_EQ(ns.cols(), 1);
  EXPECT_LT((circulant() * ns).norm(), 1e-12);
}

TEST(Codim1, Examples) {
  const std::vector<LorentzVector> basis{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const Codim1Result a = codim1_test(basis);
  EXPECT_FALSE(a.verdict.is_degenerate);
  EXPECT_FALSE(a.normal.has_value());

  const std::vector<LorentzVector> plane{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  const Codim1Result b = codim1_test(plane);
  ASSERT_TRUE(b.verdict.is_degenerate);
  EXPECT_NEAR(b.verdict.det_value, 0.0, 1e-14);
  ASSERT_TRUE(b.normal.has_value());
  EXPECT_NEAR(std::abs((*b.normal)[2]), 1.0, 1e-12);
  EXPECT_NEAR((*b.normal)[0], 0.0, 1e-12);
  EXPECT_NEAR((*b.normal)[1], 0.0, 1e-12);
}

TEST(Codim1, WrongCount) {
  const std::vector<LorentzVector> two{{1, 0, 0}, {0, 1, 0}};
  EXPECT_EQ(code_of([&] { codim1_test(two); }), ErrorCode::WrongCount);
}

TEST(Codim1, GramEqualsMinusSquaredCoordinateDeterminant) {
  oracle::Sampler s(5);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 100; ++t) {
      std::vector<LorentzVector> vs;
      Eigen::MatrixXd y(n + 1, n + 1);
      for (int i = 0; i <= n; ++i) {
        vs.emplace_back(s.gaussian(n + 1));
        y.row(i) = vs.back().coords().transpose();
      }
      const double dy = oracle::cofactor_det(y);
      const Codim1Result r = codim1_test(vs);
      EXPECT_LE(std::abs(r.verdict.det_value + dy * dy), 1e-9 * std::max(1.0, dy * dy));
      EXPECT_LE(r.identity_residual, 1e-9);
    }
  }
}

TEST(Codim1, NormalIsOrthogonalForSpanDeficientSets) {
  oracle::Sampler s(6);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 3;
    std::vector<LorentzVector> vs;
    for (int i = 0; i < n; ++i) vs.emplace_back(s.gaussian(n + 1));
    Eigen::VectorXd combo = Eigen::VectorXd::Zero(n + 1);
    for (int i = 0; i < n; ++i) combo += s.normal() * vs[static_cast<std::size_t>(i)].coords();
    vs.emplace_back(combo);
    const Codim1Result r = codim1_test(vs);
    ASSERT_TRUE(r.verdict.is_degenerate);
    ASSERT_TRUE(r.normal.has_value());
    for (const auto& v : vs) {
      EXPECT_LE(std::abs(inner(v, *r.normal)), 1e-9 * (1.0 + v.sup_norm()));
    }
  }
}

TEST(Helpers, FirstNonzeroPositiveAndUnitSpacelike) {
  const LorentzVector v = first_nonzero_positive({0, -2, 1});
  EXPECT_EQ(v, LorentzVector({0, 2, -1}));
  const LorentzVector u = unit_spacelike({3, 0, 0});
  EXPECT_NEAR(norm_sq(u), 1.0, 1e-15);
  EXPECT_EQ(code_of([] { unit_spacelike({0, 0, 1}); }), ErrorCode::DomainError);
}
