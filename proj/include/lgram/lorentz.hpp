#pragma once

// Linear algebra in Lorentzian space R^{n,1}: the inner product with one
// negative (last) coordinate, sign classification, Gram matrices and a
// scale-aware degeneracy test for them.

#include <Eigen/Dense>

#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace lgram {

inline constexpr double kDefaultTol = 1e-9;

/// Coordinate vector in R^{n,1}; the last coordinate is the timelike one.
/// Always at least three coordinates (n >= 2) and all finite.
class LorentzVector {
 public:
  explicit LorentzVector(Eigen::VectorXd coords);
  LorentzVector(std::initializer_list<double> coords);

  const Eigen::VectorXd& coords() const noexcept { return coords_; }
  Eigen::Index size() const noexcept { return coords_.size(); }
  /// Ambient hyperbolic dimension n.
  int n() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  double operator[](Eigen::Index i) const { return coords_[i]; }
  double last() const { return coords_[coords_.size() - 1]; }
  double sup_norm() const { return coords_.cwiseAbs().maxCoeff(); }

  LorentzVector operator-() const { return LorentzVector(Eigen::VectorXd(-coords_)); }
  friend LorentzVector operator+(const LorentzVector& a, const LorentzVector& b);
  friend LorentzVector operator-(const LorentzVector& a, const LorentzVector& b);
  friend LorentzVector operator*(double s, const LorentzVector& a);
  friend LorentzVector operator*(const LorentzVector& a, double s) { return s * a; }
  friend LorentzVector operator/(const LorentzVector& a, double s) { return (1.0 / s) * a; }
  friend bool operator==(const LorentzVector& a, const LorentzVector& b) {
    return a.coords_ == b.coords_;
  }

 private:
  Eigen::VectorXd coords_;
};

enum class SignClass { Spacelike, Timelike, Lightlike };

/// <x,y> = x_1 y_1 + ... + x_n y_n - x_{n+1} y_{n+1}.
double inner(const LorentzVector& x, const LorentzVector& y);
double norm_sq(const LorentzVector& x);

/// Lightlike when |<x,x>| <= tol (1 + |x|_inf^2).
SignClass classify(const LorentzVector& x, double tol = kDefaultTol);

/// Symmetric Gram matrix of Lorentzian inner products.
struct GramMatrix {
  Eigen::MatrixXd entries;
  int n_ambient = 0;
};

GramMatrix gram(std::span<const LorentzVector> vs);

struct DegeneracyVerdict {
  bool is_degenerate = false;
  double det_value = 0.0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  /// Unit-norm kernel coefficients; present iff is_degenerate.
  std::optional<Eigen::VectorXd> kernel;

  /// sigma_min / max(sigma_max, 1): the quantity compared against tol.
  double ratio() const;
};

/// Degenerate iff sigma_min <= tol * max(sigma_max, 1). Singular values come
/// from a symmetric eigendecomposition; det is the product of eigenvalues.
DegeneracyVerdict degeneracy(const Eigen::MatrixXd& m, double tol = kDefaultTol);
DegeneracyVerdict degeneracy(const GramMatrix& m, double tol = kDefaultTol);

/// Orthonormal (Euclidean) basis of the numerical null space of a symmetric
/// matrix, as columns. Always holds at least the eigenvector of the smallest
/// |eigenvalue|.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double tol = kDefaultTol);

struct Codim1Result {
  DegeneracyVerdict verdict;
  /// Lorentz normal w with <v_i, w> ~ 0 for all i; present iff degenerate.
  std::optional<LorentzVector> normal;
  double coord_det = 0.0;
  /// |det X + (det Y)^2| relative to the scale of both sides.
  double identity_residual = 0.0;
};

/// Tests whether n+1 vectors of R^{n,1} lie in a codimension-1 subspace via
/// their Gram matrix, and extracts the normal from the coordinate matrix.
Codim1Result codim1_test(std::span<const LorentzVector> vs, double tol = kDefaultTol);

/// Lorentz dual of the smallest right singular vectors of the coordinate
/// matrix whose rows are vs: columns w with <v_i, w> ~ 0. Returns `count`
/// columns (the last `count` singular directions).
Eigen::MatrixXd lorentz_complement(std::span<const LorentzVector> vs, int count);

/// Sign-normalises: the first coordinate with magnitude above 1e-12 |v|_inf
/// is made positive.
LorentzVector first_nonzero_positive(const LorentzVector& v);

/// Scales a spacelike vector to <v,v> = 1.
LorentzVector unit_spacelike(const LorentzVector& v);

namespace detail {

/// Lorentzian product accumulated in extended precision, rounded once.
inline double dot(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index last = x.size() - 1;
  long double acc = -static_cast<long double>(x[last]) * y[last];
  for (Eigen::Index i = 0; i < last; ++i) acc += static_cast<long double>(x[i]) * y[i];
  return static_cast<double>(acc);
}

/// diag(1, ..., 1, -1) applied to a coordinate vector.
inline Eigen::VectorXd flip_time(Eigen::VectorXd x) {
  x[x.size() - 1] = -x[x.size() - 1];
  return x;
}

Eigen::MatrixXd coordinate_matrix(std::span<const LorentzVector> vs);

/// Lorentz-orthonormal basis (columns) of the complement of span(vs), made
/// with Gram-Schmidt on the standard basis. The complement must be
/// non-degenerate. The timelike column, if any, comes first.
Eigen::MatrixXd orthonormal_complement(std::span<const Eigen::VectorXd> vs, Eigen::Index dim);

}  // namespace detail

}  // namespace lgram
