#include "lgram/lorentz.hpp"

#include "lgram/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lgram {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidVector: return "InvalidVector";
    case ErrorCode::InvalidObject: return "InvalidObject";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::WrongCount: return "WrongCount";
    case ErrorCode::IdentityCheckFailed: return "IdentityCheckFailed";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoCommonTangent: return "NoCommonTangent";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::DegenerateDatum: return "DegenerateDatum";
    case ErrorCode::NotDegenerate: return "NotDegenerate";
    case ErrorCode::NormalSearchFailed: return "NormalSearchFailed";
    case ErrorCode::NotUnitNormal: return "NotUnitNormal";
    case ErrorCode::NoReliableKernel: return "NoReliableKernel";
    case ErrorCode::TooManyObjects: return "TooManyObjects";
    case ErrorCode::InfeasibleParams: return "InfeasibleParams";
    case ErrorCode::RejectionFailed: return "RejectionFailed";
    case ErrorCode::OutsideBall: return "OutsideBall";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
  }
  return "Unknown";
}

LorentzVector::LorentzVector(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 3) {
    throw Error(ErrorCode::InvalidVector,
                "Lorentz vectors need at least 3 coordinates, got " +
                    std::to_string(coords_.size()));
  }
  if (!coords_.allFinite()) {
    throw Error(ErrorCode::InvalidVector, "non-finite coordinate");
  }
}

LorentzVector::LorentzVector(std::initializer_list<double> coords)
    : LorentzVector(Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
          coords.begin(), static_cast<Eigen::Index>(coords.size())))) {}

LorentzVector operator+(const LorentzVector& a, const LorentzVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sum");
  return LorentzVector(Eigen::VectorXd(a.coords_ + b.coords_));
}

LorentzVector operator-(const LorentzVector& a, const LorentzVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector difference");
  return LorentzVector(Eigen::VectorXd(a.coords_ - b.coords_));
}

LorentzVector operator*(double s, const LorentzVector& a) {
  return LorentzVector(Eigen::VectorXd(s * a.coords_));
}

double inner(const LorentzVector& x, const LorentzVector& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::DimensionMismatch, "inner product of vectors of length " +
                                                  std::to_string(x.size()) + " and " +
                                                  std::to_string(y.size()));
  }
  return detail::dot(x.coords(), y.coords());
}

double norm_sq(const LorentzVector& x) { return detail::dot(x.coords(), x.coords()); }

SignClass classify(const LorentzVector& x, double tol) {
  const double q = norm_sq(x);
  const double s = x.sup_norm();
  if (std::abs(q) <= tol * (1.0 + s * s)) return SignClass::Lightlike;
  return q > 0 ? SignClass::Spacelike : SignClass::Timelike;
}

GramMatrix gram(std::span<const LorentzVector> vs) {
  const auto m = static_cast<Eigen::Index>(vs.size());
  GramMatrix g;
  g.entries = Eigen::MatrixXd::Zero(m, m);
  g.n_ambient = m > 0 ? vs[0].n() : 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      const double x = inner(vs[i], vs[j]);
      g.entries(i, j) = x;
      g.entries(j, i) = x;
    }
  }
  return g;
}

double DegeneracyVerdict::ratio() const { return sigma_min / std::max(sigma_max, 1.0); }

namespace {

void check_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::NotSymmetric, "matrix is not square or is empty");
  }
  if (!m.allFinite()) throw Error(ErrorCode::InvalidVector, "non-finite matrix entry");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw Error(ErrorCode::NotSymmetric, "asymmetry " + std::to_string(asym));
  }
}

Eigen::VectorXd sign_normalised(Eigen::VectorXd v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // strict comparison keeps the lowest index among equal magnitudes
    if (std::abs(v[i]) > best_abs) {
      best_abs = std::abs(v[i]);
      best = i;
    }
  }
  if (v[best] < 0) v = -v;
  return v;
}

}  // namespace

DegeneracyVerdict degeneracy(const Eigen::MatrixXd& m, double tol) {
  check_symmetric(m);
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const Eigen::VectorXd& ev = es.eigenvalues();

  DegeneracyVerdict out;
  Eigen::Index imin = 0;
  out.sigma_min = ev.cwiseAbs().minCoeff(&imin);
  out.sigma_max = ev.cwiseAbs().maxCoeff();
  out.det_value = ev.prod();
  out.is_degenerate = out.sigma_min <= tol * std::max(out.sigma_max, 1.0);
  if (out.is_degenerate) {
    Eigen::VectorXd k = es.eigenvectors().col(imin);
    out.kernel = sign_normalised(k.normalized());
  }
  return out;
}

DegeneracyVerdict degeneracy(const GramMatrix& m, double tol) {
  return degeneracy(m.entries, tol);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double tol) {
  check_symmetric(m);
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const Eigen::VectorXd mags = es.eigenvalues().cwiseAbs();
  const double threshold = tol * std::max(mags.maxCoeff(), 1.0);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(mags.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return mags[a] < mags[b]; });

  std::vector<Eigen::Index> keep{order.front()};
  for (std::size_t k = 1; k < order.size() && mags[order[k]] <= threshold; ++k) {
    keep.push_back(order[k]);
  }
  Eigen::MatrixXd basis(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = sign_normalised(es.eigenvectors().col(keep[k]));
  }
  return basis;
}

namespace detail {

Eigen::MatrixXd coordinate_matrix(std::span<const LorentzVector> vs) {
  if (vs.empty()) throw Error(ErrorCode::WrongCount, "no vectors");
  const Eigen::Index dim = vs[0].size();
  Eigen::MatrixXd y(static_cast<Eigen::Index>(vs.size()), dim);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != dim) throw Error(ErrorCode::DimensionMismatch, "coordinate matrix");
    y.row(static_cast<Eigen::Index>(i)) = vs[i].coords().transpose();
  }
  return y;
}

Eigen::MatrixXd orthonormal_complement(std::span<const Eigen::VectorXd> vs, Eigen::Index dim) {
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> signs;

  auto project = [&](Eigen::VectorXd x) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      x -= signs[k] * dot(x, basis[k]) * basis[k];
    }
    return x;
  };
  auto add = [&](const Eigen::VectorXd& x) {
    const double q = dot(x, x);
    basis.push_back(x / std::sqrt(std::abs(q)));
    signs.push_back(q > 0 ? 1.0 : -1.0);
  };

  for (const auto& v : vs) {
    Eigen::VectorXd x = project(v);
    if (x.norm() <= 1e-12 * std::max(1.0, v.norm())) continue;
    if (std::abs(dot(x, x)) <= 1e-10 * x.squaredNorm()) {
      throw Error(ErrorCode::DomainError, "span is degenerate; no orthonormal complement");
    }
    add(x);
  }
  const std::size_t span_dim = basis.size();

  // Candidates: standard basis vectors and their pairwise sums/differences,
  // taken greedily by largest |<x,x>| after projection.
  std::vector<Eigen::VectorXd> candidates;
  for (Eigen::Index i = 0; i < dim; ++i) candidates.push_back(Eigen::VectorXd::Unit(dim, i));
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      candidates.push_back(Eigen::VectorXd::Unit(dim, i) + Eigen::VectorXd::Unit(dim, j));
      candidates.push_back(Eigen::VectorXd::Unit(dim, i) - Eigen::VectorXd::Unit(dim, j));
    }
  }
  while (static_cast<Eigen::Index>(basis.size()) < dim) {
    double best = 0.0;
    Eigen::VectorXd best_x;
    for (const auto& c : candidates) {
      Eigen::VectorXd x = project(c);
      const double q = std::abs(dot(x, x)) / std::max(x.squaredNorm(), 1e-300);
      if (x.norm() > 1e-9 && q > best) {
        best = q;
        best_x = x;
      }
    }
    if (best < 1e-8) throw Error(ErrorCode::DomainError, "complement is degenerate");
    add(best_x);
  }

  const auto extra = static_cast<Eigen::Index>(basis.size() - span_dim);
  Eigen::MatrixXd out(dim, extra);
  Eigen::Index col = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = span_dim; k < basis.size(); ++k) {
      const bool timelike = signs[k] < 0;
      if ((pass == 0) != timelike) continue;
      Eigen::VectorXd b = basis[k];
      if (timelike && b[dim - 1] < 0) b = -b;
      out.col(col++) = b;
    }
  }
  return out;
}

}  // namespace detail

Eigen::MatrixXd lorentz_complement(std::span<const LorentzVector> vs, int count) {
  const Eigen::MatrixXd y = detail::coordinate_matrix(vs);
  const Eigen::Index dim = y.cols();
  if (count < 1 || count > dim) throw Error(ErrorCode::DomainError, "complement size");
  // Pad to a square matrix so the full V always exists.
  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(std::max(y.rows(), dim), dim);
  padded.topRows(y.rows()) = y;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(padded, Eigen::ComputeFullV);
  Eigen::MatrixXd out(dim, count);
  for (int k = 0; k < count; ++k) {
    out.col(k) = detail::flip_time(svd.matrixV().col(dim - count + k));
  }
  return out;
}

Codim1Result codim1_test(std::span<const LorentzVector> vs, double tol) {
  if (vs.empty()) throw Error(ErrorCode::WrongCount, "codim1_test needs n+1 vectors");
  const auto dim = vs[0].size();
  if (static_cast<Eigen::Index>(vs.size()) != dim) {
    throw Error(ErrorCode::WrongCount, "codim1_test needs exactly n+1 = " + std::to_string(dim) +
                                           " vectors, got " + std::to_string(vs.size()));
  }
  Codim1Result out;
  out.verdict = degeneracy(gram(vs), tol);

  const Eigen::MatrixXd y = detail::coordinate_matrix(vs);
  out.coord_det = y.partialPivLu().determinant();
  // Hadamard bound on |det X|; near-singular sets are compared against it
  const Eigen::MatrixXd x = gram(vs).entries;
  double hadamard = 1.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) hadamard *= x.row(i).norm();
  const double lhs = out.verdict.det_value;
  const double rhs = -out.coord_det * out.coord_det;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-6 * hadamard, 1e-300});
  out.identity_residual = std::abs(lhs - rhs) / scale;
  if (out.identity_residual > 1e-8) {
    throw Error(ErrorCode::IdentityCheckFailed,
                "det X = -(det Y)^2 violated, residual " + std::to_string(out.identity_residual));
  }

  if (out.verdict.is_degenerate) {
    const Eigen::MatrixXd w = lorentz_complement(vs, 1);
    out.normal = first_nonzero_positive(LorentzVector(Eigen::VectorXd(w.col(0))));
  }
  return out;
}

LorentzVector first_nonzero_positive(const LorentzVector& v) {
  const double cut = 1e-12 * v.sup_norm();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > cut) return v[i] < 0 ? -v : v;
  }
  return v;
}

LorentzVector unit_spacelike(const LorentzVector& v) {
  const double q = norm_sq(v);
  if (!(q > 0)) throw Error(ErrorCode::DomainError, "vector is not spacelike");
  return v / std::sqrt(q);
}

}  // namespace lgram
