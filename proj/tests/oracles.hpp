#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's linear algebra: determinants are cofactor expansions, roots
// come from bisection, and circle tests use the classical lifted determinant.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

/// Determinant by cofactor expansion along the first row.
inline double cofactor_det(const Eigen::MatrixXd& m) {
  const Eigen::Index k = m.rows();
  if (k == 1) return m(0, 0);
  if (k == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  double det = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::MatrixXd minor(k - 1, k - 1);
    for (Eigen::Index r = 1; r < k; ++r) {
      Eigen::Index c2 = 0;
      for (Eigen::Index c = 0; c < k; ++c) {
        if (c == j) continue;
        minor(r - 1, c2++) = m(r, c);
      }
    }
    det += ((j % 2 == 0) ? 1.0 : -1.0) * m(0, j) * cofactor_det(minor);
  }
  return det;
}

/// Lorentzian product written out term by term.
inline double lorentz(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) s += x[i] * y[i];
  return s - x[x.size() - 1] * y[y.size() - 1];
}

/// Root of a monotone function on [lo, hi] by bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Four points of the plane are concyclic or collinear iff
/// det [x^2 + y^2, x, y, 1] vanishes. Returned relative to the row norms.
inline double concyclic_residual(const std::vector<Eigen::Vector2d>& pts) {
  Eigen::MatrixXd m(4, 4);
  double scale = 1.0;
  for (int i = 0; i < 4; ++i) {
    const auto& p = pts[static_cast<std::size_t>(i)];
    m(i, 0) = p.squaredNorm();
    m(i, 1) = p.x();
    m(i, 2) = p.y();
    m(i, 3) = 1.0;
    scale *= m.row(i).norm();
  }
  return std::abs(cofactor_det(m)) / scale;
}

/// Plain Euclidean Gaussian vectors from the standard library engine.
class Sampler {
 public:
  explicit Sampler(unsigned seed) : gen_(seed) {}
  double normal() { return dist_(gen_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  Eigen::VectorXd gaussian(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }
  /// Point (x, sqrt(1 + |x|^2)) of the hyperboloid.
  Eigen::VectorXd hpoint(Eigen::Index n, double spread = 1.0) {
    Eigen::VectorXd x(n + 1);
    x.head(n) = spread * gaussian(n);
    x[n] = std::sqrt(1.0 + x.head(n).squaredNorm());
    return x;
  }
  /// Forward lightlike k (d, 1).
  Eigen::VectorXd lightlike(Eigen::Index n) {
    Eigen::VectorXd x(n + 1);
    x.head(n) = gaussian(n).normalized();
    x[n] = 1.0;
    return uniform(0.5, 2.0) * x;
  }
  /// Unit spacelike (cosh a d, sinh a).
  Eigen::VectorXd unit_spacelike(Eigen::Index n) {
    const double a = 0.7 * normal();
    Eigen::VectorXd x(n + 1);
    x.head(n) = std::cosh(a) * gaussian(n).normalized();
    x[n] = std::sinh(a);
    return x;
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> dist_;
};

}  // namespace oracle
