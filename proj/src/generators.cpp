#include "lgram/generators.hpp"

#include "lgram/error.hpp"
#include "lgram/models.hpp"
#include "lgram/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace lgram {

namespace {

constexpr double kGenericMargin = 1e-5;
constexpr int kMaxRetries = 100;

using Vec = Eigen::VectorXd;

struct KindEntry {
  GenKind kind;
  std::string_view name;
};

constexpr std::array<KindEntry, 13> kKinds{{
    {GenKind::PointsOnHorosphere, "points_on_horosphere"},
    {GenKind::PointsOnHypersphere, "points_on_hypersphere"},
    {GenKind::PointsOnHyperplane, "points_on_hyperplane"},
    {GenKind::PointsOnEquidistant, "points_on_equidistant"},
    {GenKind::HorospheresOnHyperplaneBoundary, "horospheres_on_hyperplane_boundary"},
    {GenKind::HyperplanesTangentAtInfinity, "hyperplanes_tangent_at_infinity"},
    {GenKind::HyperplanesCommonIdealPoint, "hyperplanes_common_ideal_point"},
    {GenKind::HyperplanesOrthogonalEquallyInclined, "hyperplanes_orth_equal"},
    {GenKind::GenericPoints, "generic_points"},
    {GenKind::GenericHorospheres, "generic_horospheres"},
    {GenKind::GenericHyperplanes, "generic_hyperplanes"},
    {GenKind::SpheresTangentToCircle, "spheres_tangent_to_circle"},
    {GenKind::SpheresThroughPoint, "spheres_through_point"},
}};

bool is_point_kind(GenKind k) {
  return k == GenKind::PointsOnHorosphere || k == GenKind::PointsOnHypersphere ||
         k == GenKind::PointsOnHyperplane || k == GenKind::PointsOnEquidistant ||
         k == GenKind::GenericPoints;
}

bool is_sphere_kind(GenKind k) {
  return k == GenKind::SpheresTangentToCircle || k == GenKind::SpheresThroughPoint;
}

/// GenSpec parameters with defaults and validation.
class Params {
 public:
  explicit Params(const std::map<std::string, double>& p) : p_(p) {}

  std::optional<double> get(const std::string& key) const {
    const auto it = p_.find(key);
    if (it == p_.end()) return std::nullopt;
    if (!std::isfinite(it->second)) {
      throw Error(ErrorCode::InfeasibleParams, "parameter " + key + " must be finite");
    }
    return it->second;
  }

 private:
  const std::map<std::string, double>& p_;
};

/// Unit spacelike (cosh a d, sinh a).
LorentzVector random_unit_spacelike(Rng& rng, int n, double spread = 1.0) {
  const double a = spread * rng.normal();
  Vec x(n + 1);
  x.head(n) = std::cosh(a) * rng.direction(n);
  x[n] = std::sinh(a);
  return LorentzVector(std::move(x));
}

/// Forward lightlike k (d, 1).
LorentzVector random_lightlike(Rng& rng, int n, double lo = 0.5, double hi = 2.0) {
  Vec x(n + 1);
  x.head(n) = rng.direction(n);
  x[n] = 1.0;
  return LorentzVector(Vec(rng.uniform(lo, hi) * x));
}

HPoint random_point(Rng& rng, int n, double spread) {
  return HPoint::from_spatial(spread * rng.gaussian(n));
}

/// Point q / sqrt(-<q,q>) on the upper sheet.
HPoint normalise_timelike(Vec q) {
  const double qq = detail::dot(q, q);
  q /= std::sqrt(-qq);
  if (q[q.size() - 1] < 0) q = -q;
  return HPoint(LorentzVector(std::move(q)));
}

/// Unit spacelike tangent vector at c.
Vec random_tangent(Rng& rng, const HPoint& c) {
  const Vec& cv = c.rep().coords();
  for (;;) {
    Vec g = rng.gaussian(cv.size());
    g += detail::dot(g, cv) * cv;
    const double gg = detail::dot(g, g);
    if (gg > 1e-12) return g / std::sqrt(gg);
  }
}

/// Forward lightlike vector inside w-perp for spacelike w: the complement has
/// a forward timelike unit column t and spacelike columns e_j.
Vec lightlike_in_perp(Rng& rng, const Eigen::MatrixXd& frame) {
  const Eigen::Index m = frame.cols() - 1;
  const Vec d = rng.direction(m);
  return rng.uniform(0.5, 2.0) * (frame.col(0) + frame.rightCols(m) * d);
}

Eigen::MatrixXd perp_frame(const LorentzVector& w) {
  const std::array<Vec, 1> span{w.coords()};
  return detail::orthonormal_complement(span, w.size());
}

double ratio(const DegeneracyVerdict& v) {
  return v.sigma_max > 0 ? v.sigma_min / v.sigma_max : 0.0;
}

std::vector<HPoint> points_on_surface(GenKind kind, const GenSpec& spec, int count, Rng& rng,
                                      GenTruth& truth) {
  const Params params(spec.params);
  const int n = spec.n;
  const double spread = params.get("spread").value_or(1.0);
  std::vector<HPoint> pts;
  switch (kind) {
    case GenKind::PointsOnHorosphere: {
      const Horosphere h(random_lightlike(rng, n));
      for (int i = 0; i < count; ++i) {
        pts.push_back(horosphere_chart_inverse(h, spread * rng.gaussian(n - 1)));
      }
      truth.surface = h;
      break;
    }
    case GenKind::PointsOnHypersphere: {
      const double r = params.get("radius").value_or(rng.uniform(0.5, 2.0));
      if (!(r > 0)) throw Error(ErrorCode::InfeasibleParams, "radius must be positive");
      const HPoint c = random_point(rng, n, 0.5 * spread);
      for (int i = 0; i < count; ++i) {
        const Vec e = random_tangent(rng, c);
        pts.push_back(normalise_timelike(std::cosh(r) * c.rep().coords() + std::sinh(r) * e));
      }
      truth.surface = Hypersphere(c, r);
      break;
    }
    case GenKind::PointsOnHyperplane:
    case GenKind::PointsOnEquidistant: {
      double offset = 0.0;
      if (kind == GenKind::PointsOnEquidistant) {
        offset = params.get("offset").value_or(rng.sign() * rng.uniform(0.3, 1.5));
        if (offset == 0.0) throw Error(ErrorCode::InfeasibleParams, "offset must be nonzero");
      }
      const LorentzVector nv = random_unit_spacelike(rng, n, 0.5);
      const double s = std::asinh(offset);
      for (int i = 0; i < count; ++i) {
        const Vec p = random_point(rng, n, spread).rep().coords();
        const HPoint q = normalise_timelike(p - detail::dot(p, nv.coords()) * nv.coords());
        pts.push_back(normalise_timelike(std::cosh(s) * q.rep().coords() +
                                         std::sinh(s) * nv.coords()));
      }
      if (kind == GenKind::PointsOnHyperplane) {
        truth.surface = CoHyperplane(nv);
      } else {
        truth.surface = EquidistantBranch(nv, offset);
      }
      break;
    }
    default:
      break;
  }
  return pts;
}

std::vector<CoHyperplane> casey_family(GenKind kind, const GenSpec& spec, int count, Rng& rng,
                                       GenTruth& truth) {
  const Params params(spec.params);
  const int n = spec.n;
  std::vector<CoHyperplane> hps;
  switch (kind) {
    case GenKind::HyperplanesTangentAtInfinity: {
      // n_i = +-(v + z_i), z_i lightlike in v-perp
      const LorentzVector v = random_unit_spacelike(rng, n, 0.5);
      const Eigen::MatrixXd frame = perp_frame(v);
      for (int i = 0; i < count; ++i) {
        const Vec z = lightlike_in_perp(rng, frame);
        hps.emplace_back(LorentzVector(Vec(rng.sign() * (v.coords() + z))));
      }
      CaseyCase c;
      c.kind = CaseyCaseKind::TangentHyperplaneAtInfinity;
      c.witnesses = {v};
      truth.casey = c;
      break;
    }
    case GenKind::HyperplanesCommonIdealPoint: {
      // n_i = e_i + a_i w, e_i unit in the spacelike complement of {w, w'}
      const LorentzVector w = random_lightlike(rng, n, 1.0, 1.0);
      Vec wd = -w.coords();
      wd[n] = w[n];
      const std::array<Vec, 2> span{Vec(w.coords() + wd), Vec(w.coords() - wd)};
      const Eigen::MatrixXd e = detail::orthonormal_complement(span, n + 1);
      for (int i = 0; i < count; ++i) {
        const Vec x = e * rng.direction(e.cols()) + rng.normal() * w.coords();
        hps.emplace_back(LorentzVector(x));
      }
      CaseyCase c;
      c.kind = CaseyCaseKind::CommonIdealPoint;
      c.witnesses = {w};
      truth.casey = c;
      break;
    }
    case GenKind::HyperplanesOrthogonalEquallyInclined: {
      const double lambda = params.get("lambda").value_or(rng.uniform(0.1, 0.9));
      if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw Error(ErrorCode::InfeasibleParams, "inclination must satisfy 0 <= lambda < 1");
      }
      // u-perp = span{p} + E with p forward unit timelike and E spacelike;
      // v = sqrt(1 + s^2) u + s p, so <n, v> = -s a for n = a p + e.
      const LorentzVector u = random_unit_spacelike(rng, n, 0.5);
      const Eigen::MatrixXd frame = perp_frame(u);
      const Vec p = frame.col(0);
      const Eigen::MatrixXd e = frame.rightCols(n - 1);
      const double s = rng.uniform(0.5, 2.0);
      const Vec v = std::sqrt(1.0 + s * s) * u.coords() + s * p;
      const double kappa = lambda / s;
      const double elen = std::sqrt(1.0 + kappa * kappa);
      for (int i = 0; i < count; ++i) {
        // n = 2 has only four admissible normals; cycle through them
        const Vec dir = n == 2 ? Vec(Vec::Constant(1, i % 2 == 0 ? 1.0 : -1.0))
                               : rng.direction(n - 1);
        const double a = (n == 2 ? ((i / 2) % 2 == 0 ? 1.0 : -1.0) : rng.sign()) * kappa;
        hps.emplace_back(LorentzVector(Vec(a * p + elen * (e * dir))));
      }
      CaseyCase c;
      c.kind = CaseyCaseKind::OrthogonalAndEquallyInclined;
      c.witnesses = {u, LorentzVector(v)};
      c.lambda = lambda;
      truth.casey = c;
      break;
    }
    default:
      break;
  }
  return hps;
}

std::vector<CoSphereE> sphere_family(GenKind kind, const GenSpec& spec, int count, Rng& rng,
                                     GenTruth& truth) {
  const Params params(spec.params);
  const int n = spec.n;
  const double spread = params.get("spread").value_or(1.0);
  std::vector<CoSphereE> out;
  CaseyCase c;
  if (kind == GenKind::SpheresTangentToCircle) {
    // internally tangent to a common sphere S
    const Vec centre = spread * rng.gaussian(n);
    const double big = rng.uniform(1.0, 2.0);
    for (int i = 0; i < count; ++i) {
      const double r = big * rng.uniform(0.1, 0.6);
      out.emplace_back(Vec(centre + (big - r) * rng.direction(n)), r, rng.sign());
    }
    c.kind = CaseyCaseKind::TangentHyperplaneAtInfinity;
    c.witnesses = {sphere_lift(CoSphereE(centre, big)).normal()};
  } else {
    const Vec point = spread * rng.gaussian(n);
    for (int i = 0; i < count; ++i) {
      const double r = rng.uniform(0.2, 1.5);
      out.emplace_back(Vec(point + r * rng.direction(n)), r, rng.sign());
    }
    c.kind = CaseyCaseKind::CommonIdealPoint;
    c.witnesses = {point_lift(point)};
  }
  truth.casey = c;
  return out;
}

Configuration generate_generic(const GenSpec& spec, int count, Rng& rng) {
  const Params params(spec.params);
  const int n = spec.n;
  const double spread = params.get("spread").value_or(1.0);
  Configuration cfg;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    cfg.points.clear();
    cfg.horospheres.clear();
    cfg.hyperplanes.clear();
    double margin = 1.0;
    switch (spec.kind) {
      case GenKind::GenericPoints:
        for (int i = 0; i < count; ++i) cfg.points.push_back(random_point(rng, n, spread));
        if (count == n + 2) margin = ratio(ptolemy2_test(cfg.points));
        break;
      case GenKind::GenericHorospheres:
        for (int i = 0; i < count; ++i) cfg.horospheres.emplace_back(random_lightlike(rng, n));
        if (count == n + 1) margin = ratio(degeneracy(lambda_sq_matrix(cfg.horospheres)));
        break;
      case GenKind::GenericHyperplanes:
        for (int i = 0; i < count; ++i) {
          cfg.hyperplanes.emplace_back(random_unit_spacelike(rng, n, 0.5 * spread));
        }
        if (count == n + 1) margin = ratio(casey_test(cfg.hyperplanes).verdict);
        break;
      default:
        break;
    }
    if (margin >= kGenericMargin) return cfg;
  }
  throw Error(ErrorCode::RejectionFailed,
              "no sample cleared the degeneracy margin in " + std::to_string(kMaxRetries) +
                  " tries");
}

}  // namespace

const std::vector<GenKind>& all_kinds() {
  static const std::vector<GenKind> kinds = [] {
    std::vector<GenKind> out;
    for (const auto& k : kKinds) out.push_back(k.kind);
    return out;
  }();
  return kinds;
}

std::string_view kind_name(GenKind kind) noexcept {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

GenKind parse_kind(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  throw Error(ErrorCode::InfeasibleParams, "unknown generator kind '" + std::string(name) + "'");
}

int default_count(GenKind kind, int n) {
  return is_point_kind(kind) || is_sphere_kind(kind) ? n + 2 : n + 1;
}

Configuration generate(const GenSpec& spec) {
  if (spec.n < 2) throw Error(ErrorCode::InfeasibleParams, "n must be at least 2");
  const int count = spec.count.value_or(default_count(spec.kind, spec.n));
  if (count < 1) throw Error(ErrorCode::InfeasibleParams, "count must be at least 1");
  if (const auto s = Params(spec.params).get("spread"); s && !(*s > 0)) {
    throw Error(ErrorCode::InfeasibleParams, "spread must be positive");
  }
  Rng rng(spec.seed);
  Configuration cfg;
  switch (spec.kind) {
    case GenKind::PointsOnHorosphere:
    case GenKind::PointsOnHypersphere:
    case GenKind::PointsOnHyperplane:
    case GenKind::PointsOnEquidistant:
      cfg.points = points_on_surface(spec.kind, spec, count, rng, cfg.truth);
      break;
    case GenKind::HorospheresOnHyperplaneBoundary: {
      const LorentzVector w = random_unit_spacelike(rng, spec.n, 0.5);
      const Eigen::MatrixXd frame = perp_frame(w);
      for (int i = 0; i < count; ++i) {
        cfg.horospheres.emplace_back(LorentzVector(lightlike_in_perp(rng, frame)));
      }
      // for n = 2 the boundary has two ideal points; keep both in use
      auto one_centre = [&] {
        return std::all_of(cfg.horospheres.begin(), cfg.horospheres.end(), [&](const Horosphere& h) {
          return same_centre(h, cfg.horospheres.front());
        });
      };
      for (int tries = 0; count > 1 && one_centre() && tries < 64; ++tries) {
        cfg.horospheres.back() = Horosphere(LorentzVector(lightlike_in_perp(rng, frame)));
      }
      cfg.truth.boundary = CoHyperplane(w);
      break;
    }
    case GenKind::HyperplanesTangentAtInfinity:
    case GenKind::HyperplanesCommonIdealPoint:
    case GenKind::HyperplanesOrthogonalEquallyInclined:
      cfg.hyperplanes = casey_family(spec.kind, spec, count, rng, cfg.truth);
      break;
    case GenKind::GenericPoints:
    case GenKind::GenericHorospheres:
    case GenKind::GenericHyperplanes:
      cfg = generate_generic(spec, count, rng);
      break;
    case GenKind::SpheresTangentToCircle:
    case GenKind::SpheresThroughPoint:
      cfg.spheres = sphere_family(spec.kind, spec, count, rng, cfg.truth);
      break;
  }
  cfg.kind = spec.kind;
  cfg.n = spec.n;
  return cfg;
}

Configuration perturb(const Configuration& config, double magnitude, std::uint64_t seed) {
  if (magnitude == 0.0) return config;
  Rng rng(seed);
  Configuration out;
  out.kind = config.kind;
  out.n = config.n;
  const int n = config.n;
  for (const auto& p : config.points) {
    const Vec x = p.rep().coords().head(n);
    out.points.push_back(HPoint::from_spatial(x + magnitude * rng.gaussian(n)));
  }
  for (const auto& h : config.horospheres) {
    const Vec& v = h.rep().coords();
    Vec x(n + 1);
    x.head(n) = v.head(n) + magnitude * v[n] * rng.gaussian(n);
    x[n] = x.head(n).norm();
    out.horospheres.emplace_back(LorentzVector(std::move(x)));
  }
  for (const auto& hp : config.hyperplanes) {
    // chart (a, d) of the unit normal (cosh a d, sinh a)
    const Vec& v = hp.normal().coords();
    const double a = std::asinh(v[n]) + magnitude * rng.normal();
    const Vec d = (v.head(n).normalized() + magnitude * rng.gaussian(n)).normalized();
    Vec x(n + 1);
    x.head(n) = std::cosh(a) * d;
    x[n] = std::sinh(a);
    out.hyperplanes.emplace_back(LorentzVector(std::move(x)));
  }
  for (const auto& s : config.spheres) {
    const double scale = s.radius();
    out.spheres.emplace_back(Vec(s.centre() + magnitude * scale * rng.gaussian(n)),
                             s.radius() * std::exp(magnitude * rng.normal()), s.eps());
  }
  return out;
}

}  // namespace lgram
