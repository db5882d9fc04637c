#include "lgram/error.hpp"
#include "lgram/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lgram {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

template <class T>
void require_same_dim(std::span<const T> xs, int expected_count, const char* what) {
  if (xs.empty()) throw Error(ErrorCode::WrongCount, std::string(what) + ": no objects");
  const int n = xs[0].n();
  for (const auto& x : xs) {
    if (x.n() != n) throw Error(ErrorCode::DimensionMismatch, what);
  }
  if (static_cast<int>(xs.size()) != expected_count + n) {
    throw Error(ErrorCode::WrongCount, std::string(what) + " needs n+" +
                                           std::to_string(expected_count) + " = " +
                                           std::to_string(expected_count + n) +
                                           " objects, got " + std::to_string(xs.size()));
  }
}

}  // namespace

FourTermRelation four_term_relation(const Eigen::Matrix4d& x, double tol) {
  if ((x.array() < 0).any()) throw Error(ErrorCode::NegativeInput, "four-term entries must be >= 0");
  if ((x - x.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::NotSymmetric, "four-term table must be symmetric");
  }
  FourTermRelation out;
  out.products = {x(0, 1) * x(2, 3), x(0, 2) * x(1, 3), x(0, 3) * x(1, 2)};
  const double total = out.products[0] + out.products[1] + out.products[2];
  std::array<double, 3> res{};
  for (int k = 0; k < 3; ++k) {
    res[k] = std::abs(2.0 * out.products[k] - total);
  }
  int best = 0;
  for (int k = 1; k < 3; ++k) {
    if (res[k] < res[best]) best = k;
  }
  out.residual = res[best];
  out.which = res[best] <= tol * total ? static_cast<FourTermAlt>(best) : FourTermAlt::None;
  return out;
}

Eigen::MatrixXd lambda_sq_matrix(std::span<const Horosphere> hs) {
  const auto m = static_cast<Eigen::Index>(hs.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double l = lambda_length(hs[i], hs[j]);
      a(i, j) = a(j, i) = l * l;
    }
  }
  return a;
}

PennerResult penner_test(std::span<const Horosphere> hs, double tol) {
  require_same_dim(hs, 1, "penner_test");
  PennerResult out;
  out.matrix = lambda_sq_matrix(hs);
  out.verdict = degeneracy(out.matrix, tol);

  out.same_centre = std::all_of(hs.begin(), hs.end(),
                                [&](const Horosphere& h) { return same_centre(h, hs[0]); });
  if (out.same_centre || !out.verdict.is_degenerate) return out;

  std::vector<LorentzVector> reps;
  for (const auto& h : hs) reps.push_back(h.rep());
  const Eigen::MatrixXd w = lorentz_complement(reps, 1);
  const LorentzVector normal(Eigen::VectorXd(w.col(0)));
  // two independent lightlike reps span a timelike vector, so this is spacelike
  if (norm_sq(normal) <= 0) return out;
  const LorentzVector unit = first_nonzero_positive(unit_spacelike(normal));
  double res = 0.0;
  for (const auto& r : reps) {
    res = std::max(res, std::abs(inner(r, unit)) / (1.0 + r.sup_norm() * unit.sup_norm()));
  }
  out.witness = CoHyperplane(unit);
  out.witness_residual = res;
  return out;
}

LorentzVector umbilical_datum(const UmbilicalSurface& s) {
  LorentzVector u = std::visit(
      [](const auto& surface) -> LorentzVector {
        using T = std::decay_t<decltype(surface)>;
        if constexpr (std::is_same_v<T, Horosphere>) {
          return surface.rep() * kInvSqrt2;
        } else if constexpr (std::is_same_v<T, Hypersphere>) {
          const double s = std::cosh(surface.radius());
          const double delta = s + std::sqrt(s * s - 1.0);
          return delta * surface.centre().rep();
        } else if constexpr (std::is_same_v<T, EquidistantBranch>) {
          // u = a n with a^2 - 2 a offset - 1 = 0
          const double l = surface.offset();
          return (l + std::sqrt(l * l + 1.0)) * surface.normal();
        } else {
          return surface.u;
        }
      },
      s);
  const double q = norm_sq(u);
  if (std::abs(q - 1.0) <= 1e-9 || std::abs(q + 1.0) <= 1e-9) {
    throw Error(ErrorCode::DegenerateDatum, "umbilical datum has <u,u> = +-1");
  }
  return u;
}

Eigen::MatrixXd sinh_sq_matrix(std::span<const HPoint> ps) {
  const auto m = static_cast<Eigen::Index>(ps.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      b(i, j) = b(j, i) = half_dist_sinh_sq(ps[i], ps[j]);
    }
  }
  return b;
}

Ptolemy1Result ptolemy1_test(std::span<const HPoint> ps, const UmbilicalSurface& surface,
                             double tol) {
  require_same_dim(ps, 1, "ptolemy1_test");
  const LorentzVector u = umbilical_datum(surface);
  if (u.n() != ps[0].n()) throw Error(ErrorCode::DimensionMismatch, "surface dimension");
  const double uu = norm_sq(u);
  const double level = 0.5 * (uu - 1.0);
  const double hyp_tol = std::max(tol, 1e-9);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double r = std::abs(inner(ps[i].rep(), u) - level);
    if (r > hyp_tol * (1.0 + ps[i].rep().sup_norm() * u.sup_norm())) {
      throw Error(ErrorCode::HypothesisViolated,
                  "point " + std::to_string(i) + " is off the surface (residual " +
                      std::to_string(r) + ")");
    }
  }

  Ptolemy1Result out;
  out.matrix = sinh_sq_matrix(ps);
  out.verdict = degeneracy(out.matrix, tol);
  if (!out.verdict.is_degenerate) return out;

  // v_i' = p_i - u has <v_i', v_j'> = <p_i, p_j> + 1 = -2 B_ij.
  std::vector<LorentzVector> primed;
  for (const auto& p : ps) primed.push_back(p.rep() - u);
  const LorentzVector w_primed(Eigen::VectorXd(lorentz_complement(primed, 1).col(0)));
  const double mu = 2.0 * inner(u, w_primed) / (uu - 1.0);
  const LorentzVector w = w_primed - mu * u;
  if (!(norm_sq(w) > 0)) return out;
  const LorentzVector unit = first_nonzero_positive(unit_spacelike(w));
  double res = 0.0;
  for (const auto& p : ps) {
    res = std::max(res, std::abs(inner(p.rep(), unit)) / (1.0 + p.rep().sup_norm()));
  }
  out.witness = CoHyperplane(unit);
  out.witness_residual = res;
  return out;
}

DegeneracyVerdict ptolemy2_test(std::span<const HPoint> ps, double tol) {
  require_same_dim(ps, 2, "ptolemy2_test");
  return degeneracy(sinh_sq_matrix(ps), tol);
}

namespace {

/// Normalises the level set {<x, v> = c} through ps by the causal type of v.
UmbilicalFit level_set_fit(const LorentzVector& v_raw, double c_raw, std::span<const HPoint> ps,
                           double tol) {
  const double s = v_raw.sup_norm();
  if (!(s > 0)) throw Error(ErrorCode::NormalSearchFailed, "zero level-set normal");
  LorentzVector v = v_raw / s;
  double c = c_raw / s;
  double pscale = 1.0;
  for (const auto& p : ps) pscale = std::max(pscale, p.rep().sup_norm());

  UmbilicalFit fit;
  switch (classify(v, tol)) {
    case SignClass::Lightlike: {
      if (std::abs(c) <= tol) {
        throw Error(ErrorCode::NormalSearchFailed, "lightlike normal with zero level");
      }
      // <p, v> = c for a lightlike v; rescale so the level is -1/sqrt(2)
      fit.kind = UmbilicalKind::Horosphere;
      fit.datum = v * (kInvSqrt2 / -c);
      fit.offset = -kInvSqrt2;
      break;
    }
    case SignClass::Spacelike: {
      const double k = std::sqrt(norm_sq(v));
      v = v / k;
      c = c / k;
      const LorentzVector signed_v = first_nonzero_positive(v);
      if (!(signed_v == v)) c = -c;
      fit.datum = signed_v;
      fit.offset = c;
      fit.kind = std::abs(c) <= tol * pscale ? UmbilicalKind::Hyperplane
                                             : UmbilicalKind::EquidistantBranch;
      break;
    }
    case SignClass::Timelike: {
      const double k = std::sqrt(-norm_sq(v));
      v = v / k;
      c = c / k;
      if (v.last() < 0) {
        v = -v;
        c = -c;
      }
      fit.kind = UmbilicalKind::Hypersphere;
      fit.datum = v;
      fit.offset = c;
      fit.radius = std::acosh(detail::clamp_below(-c, 1.0, "hypersphere radius"));
      break;
    }
  }
  for (const auto& p : ps) {
    fit.residual = std::max(fit.residual, std::abs(inner(p.rep(), fit.datum) - fit.offset));
  }
  return fit;
}

}  // namespace

UmbilicalFit ptolemy2_classify(std::span<const HPoint> ps, double tol) {
  const DegeneracyVerdict verdict = ptolemy2_test(ps, tol);
  if (!verdict.is_degenerate) {
    throw Error(ErrorCode::NotDegenerate, "ptolemy2_classify needs a degenerate B");
  }
  const auto m = static_cast<Eigen::Index>(ps.size());
  const Eigen::Index dim = ps[0].rep().size() + 1;

  // Lift into R^{n+1,1}: v_i' = (0, p_i) + (1, 0, ..., 0), all lightlike.
  Eigen::MatrixXd y(m, dim);
  for (Eigen::Index i = 0; i < m; ++i) {
    y(i, 0) = 1.0;
    y.row(i).tail(dim - 1) = ps[static_cast<std::size_t>(i)].rep().coords().transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(y, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv[0];

  // Kernel directions (Lorentz duals); more than one when the points are
  // special, in which case the most spacelike combination is taken.
  Eigen::Index k = 1;
  while (k < dim && sv[dim - 1 - k] <= 1e-6 * smax) ++k;
  Eigen::MatrixXd kern(dim, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    kern.col(j) = detail::flip_time(svd.matrixV().col(dim - 1 - j));
  }
  Eigen::MatrixXd g(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) g(a, b) = detail::dot(kern.col(a), kern.col(b));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const Eigen::VectorXd w = kern * es.eigenvectors().col(k - 1);
  if (!(detail::dot(w, w) > tol * w.squaredNorm())) {
    throw Error(ErrorCode::NormalSearchFailed, "no spacelike normal to the lifted points");
  }

  // w = lambda u + v with u = (1, 0, ..., 0); then <p_i, v> = -lambda.
  const double lambda = w[0];
  const LorentzVector v(Eigen::VectorXd(w.tail(dim - 1)));
  return level_set_fit(v, -lambda, ps, tol);
}

UmbilicalFit fit_umbilical(std::span<const HPoint> ps, double tol) {
  if (ps.size() < 2) throw Error(ErrorCode::WrongCount, "fit_umbilical needs two or more points");
  std::vector<LorentzVector> diffs;
  for (std::size_t i = 1; i < ps.size(); ++i) diffs.push_back(ps[i].rep() - ps[0].rep());
  const LorentzVector y(Eigen::VectorXd(lorentz_complement(diffs, 1).col(0)));
  double c = 0.0;
  for (const auto& p : ps) c += inner(p.rep(), y);
  c /= static_cast<double>(ps.size());
  return level_set_fit(y, c, ps, tol);
}

}  // namespace lgram
