#include "lgram/error.hpp"
#include "lgram/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>

namespace lgram {

namespace {

constexpr std::size_t kMaxSearchObjects = 16;

using Vec = Eigen::VectorXd;

LorentzVector forward_lightlike(const Vec& w) {
  Vec x = w / w.cwiseAbs().maxCoeff();
  if (x[x.size() - 1] < 0) x = -x;
  return LorentzVector(std::move(x));
}

LorentzVector normalised_spacelike(const Vec& v) {
  return first_nonzero_positive(unit_spacelike(LorentzVector(v)));
}

/// Search over sign vectors s with s[0] = +1, in lexicographic order with
/// + before -, keeping the smallest sigma_min / max(sigma_max, 1).
struct SignSearch {
  std::vector<int> signs;
  Eigen::MatrixXd matrix;
  DegeneracyVerdict verdict;
};

SignSearch search_signs(std::size_t count, bool search, double tol,
                        const std::function<Eigen::MatrixXd(const std::vector<int>&)>& build) {
  SignSearch best;
  std::vector<int> signs(count, 1);
  if (!search) {
    best.signs = signs;
    best.matrix = build(signs);
    best.verdict = degeneracy(best.matrix, tol);
    return best;
  }
  if (count > kMaxSearchObjects) {
    throw Error(ErrorCode::TooManyObjects, "coorientation search is limited to 16 objects");
  }
  const std::size_t free = count - 1;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free); ++mask) {
    for (std::size_t i = 1; i < count; ++i) {
      signs[i] = (mask >> (free - i)) & 1U ? -1 : 1;
    }
    Eigen::MatrixXd m = build(signs);
    DegeneracyVerdict v = degeneracy(m, tol);
    if (v.ratio() < best_ratio) {
      best_ratio = v.ratio();
      best = {signs, std::move(m), std::move(v)};
    }
  }
  return best;
}

CaseyCase make_case(CaseyCaseKind kind, std::vector<LorentzVector> ws, double lambda = 0.0) {
  CaseyCase c;
  c.kind = kind;
  c.witnesses = std::move(ws);
  c.lambda = lambda;
  return c;
}

/// u unit spacelike with <n_i, u> = 0, w with <n_i, w> = alpha for all i.
CaseyCase spacelike_branch(const Vec& u, const Vec& w, double alpha) {
  const double b = detail::dot(w, u);
  const double s = std::sqrt(std::max(0.0, alpha * alpha - detail::dot(w, w)));
  // sign of t follows <w,u> so that <z,z> >= t^2 > alpha^2
  const double t = (b >= 0 ? 1.0 : -1.0) * (std::abs(b) + s + 1.0);
  const Vec z = w + t * u;
  const double zz = detail::dot(z, z);
  const double root = std::sqrt(zz);
  return make_case(CaseyCaseKind::OrthogonalAndEquallyInclined,
                   {normalised_spacelike(u), normalised_spacelike(z / root)},
                   std::abs(alpha / root));
}

/// Case analysis on u in V-perp with <n_last, u> = 0 and w in V-perp with
/// <n_i, w> = alpha. The first entry is the branch the argument reaches;
/// later entries are fallbacks for borderline numerical classifications.
std::vector<CaseyCase> classify_u(Vec u, const Vec& w, double alpha, double tol) {
  std::vector<CaseyCase> out;
  u /= u.cwiseAbs().maxCoeff();
  const double q = detail::dot(u, u);
  const SignClass cls = classify(LorentzVector(u), tol);
  if (cls == SignClass::Lightlike) {
    out.push_back(make_case(CaseyCaseKind::CommonIdealPoint, {forward_lightlike(u)}));
    return out;
  }
  if (cls == SignClass::Spacelike) {
    out.push_back(spacelike_branch(u / std::sqrt(q), w, alpha));
    out.push_back(make_case(CaseyCaseKind::CommonIdealPoint, {forward_lightlike(u)}));
    return out;
  }
  u /= std::sqrt(-q);
  Vec y = w + detail::dot(w, u) * u;
  const double yy = detail::dot(y, y);
  y /= std::sqrt(yy);
  double a = alpha / std::sqrt(yy);
  const auto tangent_y = make_case(CaseyCaseKind::TangentHyperplaneAtInfinity,
                                   {normalised_spacelike(y)});
  const auto inclined = spacelike_branch(y, u, 0.0);
  if (std::abs(1.0 - std::abs(a)) <= tol || std::abs(a) > 1.0) {
    out.push_back(tangent_y);
    out.push_back(inclined);
  } else if (std::abs(a) <= tol) {
    out.push_back(inclined);
    out.push_back(tangent_y);
  } else {
    const Vec z = y / a + std::sqrt(1.0 / (a * a) - 1.0) * u;
    out.push_back(make_case(CaseyCaseKind::TangentHyperplaneAtInfinity, {normalised_spacelike(z)}));
    out.push_back(inclined);
    out.push_back(tangent_y);
  }
  return out;
}

std::vector<CaseyCase> classify_kernel(std::span<const LorentzVector> normals,
                                       const Vec& lambda, double tol) {
  const auto m = static_cast<Eigen::Index>(normals.size());
  const Eigen::Index dim = normals[0].size();
  Vec v = Vec::Zero(dim);
  double lsum = 0.0;
  double max_n = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    v += lambda[j] * normals[static_cast<std::size_t>(j)].coords();
    lsum += lambda[j];
    max_n = std::max(max_n, normals[static_cast<std::size_t>(j)].sup_norm());
  }
  std::vector<CaseyCase> out;
  const double vscale = lambda.cwiseAbs().sum() * max_n;
  if (v.cwiseAbs().maxCoeff() > tol * vscale) {
    // <n_i, v> = lsum for all i and <v, v> = lsum^2
    const auto tangent = [&]() {
      return make_case(CaseyCaseKind::TangentHyperplaneAtInfinity,
                       {normalised_spacelike(v / (lsum == 0.0 ? 1.0 : lsum))});
    };
    const auto ideal = make_case(CaseyCaseKind::CommonIdealPoint, {forward_lightlike(v)});
    const Vec vh = v / v.cwiseAbs().maxCoeff();
    const bool lightlike = classify(LorentzVector(vh), tol) == SignClass::Lightlike;
    const bool spacelike = !lightlike && detail::dot(v, v) > 0;
    if (lightlike || !spacelike) {
      out.push_back(ideal);
      if (spacelike) out.push_back(tangent());
    } else {
      out.push_back(tangent());
      out.push_back(ideal);
    }
    return out;
  }

  // v = 0: V = span{n_i - n_last} has dimension <= n-1, so V-perp has
  // dimension >= 2.
  const LorentzVector& last = normals.back();
  std::vector<LorentzVector> diffs;
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    diffs.push_back(normals[static_cast<std::size_t>(i)] - last);
  }
  const Eigen::MatrixXd perp = lorentz_complement(diffs, 2);
  const Vec b1 = perp.col(0);
  const Vec b2 = perp.col(1);
  const double a1 = detail::dot(last.coords(), b1);
  const double a2 = detail::dot(last.coords(), b2);
  Vec u;
  Vec w;
  if (std::max(std::abs(a1), std::abs(a2)) <= tol * last.sup_norm()) {
    u = b1;
    w = b2;
  } else {
    u = (a2 * b1 - a1 * b2).normalized();
    w = (a1 * b1 + a2 * b2).normalized();
  }
  const double alpha = detail::dot(last.coords(), w);
  return classify_u(u, w, alpha, tol);
}

}  // namespace

Eigen::MatrixXd sigma_matrix(std::span<const LorentzVector> normals) {
  const auto m = static_cast<Eigen::Index>(normals.size());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      c(i, j) = c(j, i) = 0.5 * (inner(normals[static_cast<std::size_t>(i)],
                                       normals[static_cast<std::size_t>(j)]) - 1.0);
    }
  }
  return c;
}

WitnessCheck casey_witness_check(const CaseyCase& c, std::span<const LorentzVector> normals,
                                 double tol) {
  WitnessCheck out;
  double r = 0.0;
  bool ok = true;
  switch (c.kind) {
    case CaseyCaseKind::TangentHyperplaneAtInfinity: {
      if (c.witnesses.size() != 1) return {std::numeric_limits<double>::infinity(), false};
      const auto& v = c.witnesses[0];
      r = std::abs(norm_sq(v) - 1.0);
      for (const auto& n : normals) r = std::max(r, std::abs(std::abs(inner(n, v)) - 1.0));
      break;
    }
    case CaseyCaseKind::CommonIdealPoint: {
      if (c.witnesses.size() != 1) return {std::numeric_limits<double>::infinity(), false};
      const double s = c.witnesses[0].sup_norm();
      if (!(s > 0)) return {std::numeric_limits<double>::infinity(), false};
      const LorentzVector w = c.witnesses[0] / s;
      r = std::abs(norm_sq(w));
      for (const auto& n : normals) r = std::max(r, std::abs(inner(n, w)));
      break;
    }
    case CaseyCaseKind::OrthogonalAndEquallyInclined: {
      if (c.witnesses.size() != 2) return {std::numeric_limits<double>::infinity(), false};
      const auto& u = c.witnesses[0];
      const auto& v = c.witnesses[1];
      r = std::max(std::abs(norm_sq(u) - 1.0), std::abs(norm_sq(v) - 1.0));
      for (const auto& n : normals) {
        r = std::max(r, std::abs(inner(n, u)));
        r = std::max(r, std::abs(std::abs(inner(n, v)) - c.lambda));
      }
      const double cosine = std::abs(u.coords().normalized().dot(v.coords().normalized()));
      ok = cosine < 1.0 - 1e-9 && c.lambda >= 0.0 && c.lambda < 1.0;
      break;
    }
  }
  out.residual = r;
  out.pass = ok && r <= tol;
  return out;
}

CaseyCase casey_classify(std::span<const LorentzVector> normals, double tol) {
  if (normals.empty()) throw Error(ErrorCode::WrongCount, "casey_classify: no normals");
  const Eigen::Index dim = normals[0].size();
  if (static_cast<Eigen::Index>(normals.size()) != dim) {
    throw Error(ErrorCode::WrongCount, "casey_classify needs n+1 normals in R^{n,1}");
  }
  for (const auto& n : normals) {
    if (n.size() != dim) throw Error(ErrorCode::DimensionMismatch, "casey_classify");
    if (std::abs(norm_sq(n) - 1.0) > 1e-9 * (1.0 + n.sup_norm() * n.sup_norm())) {
      throw Error(ErrorCode::NotUnitNormal, "casey_classify needs unit spacelike normals");
    }
  }
  const Eigen::MatrixXd c = sigma_matrix(normals);
  const DegeneracyVerdict verdict = degeneracy(c, tol);
  if (!verdict.is_degenerate) throw Error(ErrorCode::NotDegenerate, "C is not degenerate");

  // Candidate kernel vectors. With a multi-dimensional kernel any vector
  // works; a combination with zero coefficient sum is tried first.
  const Eigen::MatrixXd kernel = null_space(c, tol);
  std::vector<Vec> lambdas;
  if (kernel.cols() >= 2) {
    const Vec sums = kernel.transpose() * Vec::Ones(kernel.rows());
    if (sums.norm() > 0) {
      Vec coeff = Vec::Zero(kernel.cols());
      coeff[0] = sums[1];
      coeff[1] = -sums[0];
      lambdas.push_back((kernel * coeff).normalized());
    }
    for (Eigen::Index j = 0; j < kernel.cols(); ++j) lambdas.push_back(kernel.col(j));
  } else {
    lambdas.push_back(*verdict.kernel);
  }

  const double kernel_bound = std::max(tol, 1e-7) * (verdict.sigma_max + 1.0);
  std::optional<CaseyCase> best;
  for (const auto& lambda : lambdas) {
    if ((c * lambda).cwiseAbs().maxCoeff() > kernel_bound * lambda.cwiseAbs().maxCoeff()) {
      throw Error(ErrorCode::NoReliableKernel, "kernel residual too large");
    }
    std::vector<CaseyCase> candidates;
    try {
      candidates = classify_kernel(normals, lambda, tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DomainError) throw;
      continue;
    }
    for (auto& candidate : candidates) {
      const WitnessCheck chk = casey_witness_check(candidate, normals, tol);
      candidate.residual = chk.residual;
      candidate.passed = chk.pass;
      if (chk.pass) return candidate;
      if (!best || (!best->passed && candidate.residual < best->residual)) best = candidate;
    }
  }
  if (!best) throw Error(ErrorCode::NoReliableKernel, "no witness could be formed");
  return *best;
}

CaseyVerdict casey_test(std::span<const CoHyperplane> hps, double tol, bool search) {
  if (hps.empty()) throw Error(ErrorCode::WrongCount, "casey_test: no hyperplanes");
  const int n = hps[0].n();
  for (const auto& h : hps) {
    if (h.n() != n) throw Error(ErrorCode::DimensionMismatch, "casey_test");
  }
  if (static_cast<int>(hps.size()) != n + 1) {
    throw Error(ErrorCode::WrongCount, "casey_test needs n+1 = " + std::to_string(n + 1) +
                                           " hyperplanes, got " + std::to_string(hps.size()));
  }
  std::vector<LorentzVector> base;
  for (const auto& h : hps) base.push_back(h.normal());
  const Eigen::MatrixXd g = gram(base).entries;
  const auto m = g.rows();

  SignSearch s = search_signs(hps.size(), search, tol, [&](const std::vector<int>& signs) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = i + 1; j < m; ++j) {
        c(i, j) = c(j, i) = 0.5 * (signs[static_cast<std::size_t>(i)] *
                                       signs[static_cast<std::size_t>(j)] * g(i, j) -
                                   1.0);
      }
    }
    return c;
  });

  CaseyVerdict out;
  out.signs = s.signs;
  out.matrix = std::move(s.matrix);
  out.verdict = std::move(s.verdict);
  if (out.verdict.is_degenerate) {
    std::vector<LorentzVector> signed_normals;
    for (std::size_t i = 0; i < base.size(); ++i) signed_normals.push_back(out.signs[i] * base[i]);
    out.casey_case = casey_classify(signed_normals, tol);
  }
  return out;
}

Eigen::MatrixXd tau_matrix(std::span<const CoSphereE> spheres) {
  const auto m = static_cast<Eigen::Index>(spheres.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      d(i, j) = d(j, i) = tau(spheres[static_cast<std::size_t>(i)],
                              spheres[static_cast<std::size_t>(j)]);
    }
  }
  return d;
}

CaseyEVerdict corollary_d_test(std::span<const CoSphereE> spheres, double tol, bool search) {
  if (spheres.empty()) throw Error(ErrorCode::WrongCount, "corollary_d_test: no spheres");
  const int n = spheres[0].n();
  for (const auto& s : spheres) {
    if (s.n() != n) throw Error(ErrorCode::DimensionMismatch, "corollary_d_test");
  }
  if (n < 2) throw Error(ErrorCode::InvalidObject, "spheres must live in R^n, n >= 2");
  if (static_cast<int>(spheres.size()) != n + 2) {
    throw Error(ErrorCode::WrongCount, "corollary_d_test needs n+2 = " + std::to_string(n + 2) +
                                           " spheres, got " + std::to_string(spheres.size()));
  }
  auto with_signs = [&](const std::vector<int>& signs) {
    std::vector<CoSphereE> out;
    for (std::size_t i = 0; i < spheres.size(); ++i) {
      out.push_back(spheres[i].with_eps(signs[i] * spheres[i].eps()));
    }
    return out;
  };

  SignSearch s = search_signs(spheres.size(), search, tol, [&](const std::vector<int>& signs) {
    return tau_matrix(with_signs(signs));
  });

  CaseyEVerdict out;
  out.signs = s.signs;
  out.matrix = std::move(s.matrix);
  out.verdict = std::move(s.verdict);

  std::vector<LorentzVector> lifted;
  for (const auto& sp : with_signs(out.signs)) lifted.push_back(sphere_lift(sp).normal());
  out.lifted_verdict = degeneracy(sigma_matrix(lifted), tol);
  out.lift_agrees = out.lifted_verdict.is_degenerate == out.verdict.is_degenerate;

  if (out.verdict.is_degenerate && out.lifted_verdict.is_degenerate) {
    EuclideanCaseyCase ec;
    ec.lifted = casey_classify(lifted, tol);
    ec.kind = ec.lifted.kind;
    ec.lambda = ec.lifted.lambda;
    if (ec.kind == CaseyCaseKind::CommonIdealPoint) {
      ec.point = point_unlift(ec.lifted.witnesses[0]);
    } else {
      for (const auto& w : ec.lifted.witnesses) ec.surfaces.push_back(sphere_unlift(w));
    }
    out.casey_case = std::move(ec);
  }
  return out;
}

}  // namespace lgram
