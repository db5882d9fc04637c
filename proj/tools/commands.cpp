#include "cli.hpp"

#include "lgram/error.hpp"
#include "lgram/models.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace lgram::cli {

namespace {

using nlohmann::json;

constexpr int kExitDegenerate = 0;
constexpr int kExitNonDegenerate = 1;
constexpr int kExitError = 2;

struct Options {
  std::string scene_path;
  std::string scenes_dir;
  std::string theorem;
  double tol = kDefaultTol;
  bool search_signs = true;
  bool emit_disk = false;
  std::string kind;
  int n = 2;
  std::optional<int> count;
  std::uint64_t seed = 0;
  std::vector<std::string> params;
  std::optional<double> perturb;
};

/// Report plus exit code of a single command.
struct Outcome {
  json report;
  int code = kExitError;
};

json coords(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(coords(m.row(i).transpose()));
  return rows;
}

json verdict_json(const DegeneracyVerdict& v) {
  json out = {{"degenerate", v.is_degenerate},
              {"sigma_min", v.sigma_min},
              {"sigma_max", v.sigma_max},
              {"det", v.det_value}};
  if (v.kernel) out["kernel"] = coords(*v.kernel);
  return out;
}

json base_report(std::string_view command, const Options& opt) {
  json r = {{"schema", kSchema}, {"command", command}, {"tol", opt.tol}};
  if (!opt.theorem.empty()) r["theorem"] = opt.theorem;
  return r;
}

json error_report(std::string_view command, std::string_view code, const std::string& message) {
  return {{"schema", kSchema},
          {"command", command},
          {"error", {{"code", code}, {"message", message}}}};
}

json casey_case_json(const CaseyCase& c) {
  json ws = json::array();
  for (const auto& w : c.witnesses) ws.push_back(coords(w.coords()));
  json out = {{"name", case_name(c.kind)},
              {"witnesses", ws},
              {"residual", c.residual},
              {"passed", c.passed}};
  if (c.kind == CaseyCaseKind::OrthogonalAndEquallyInclined) out["lambda"] = c.lambda;
  return out;
}

json sphere_or_plane_json(const SphereOrPlane& s) {
  if (s.kind == SphereOrPlane::Kind::Plane) {
    return {{"kind", "plane"}, {"normal", coords(s.normal)}, {"offset", s.offset}};
  }
  return {{"kind", "sphere"}, {"centre", coords(s.centre)}, {"radius", s.radius}, {"eps", s.eps}};
}

json euclidean_case_json(const EuclideanCaseyCase& c) {
  json out = casey_case_json(c.lifted);
  if (c.kind == CaseyCaseKind::CommonIdealPoint) {
    out["point"] = c.point ? coords(*c.point) : json(nullptr);
  } else {
    json surfaces = json::array();
    for (const auto& s : c.surfaces) surfaces.push_back(sphere_or_plane_json(s));
    out["surfaces"] = surfaces;
  }
  return out;
}

std::string_view umbilical_name(UmbilicalKind k) {
  switch (k) {
    case UmbilicalKind::Horosphere:
      return "horosphere";
    case UmbilicalKind::Hypersphere:
      return "hypersphere";
    case UmbilicalKind::Hyperplane:
      return "hyperplane";
    case UmbilicalKind::EquidistantBranch:
      return "equidistant_branch";
  }
  return "unknown";
}

json umbilical_fit_json(const UmbilicalFit& f) {
  json out = {{"name", umbilical_name(f.kind)},
              {"witnesses", json::array({coords(f.datum.coords())})},
              {"offset", f.offset},
              {"residual", f.residual}};
  if (f.kind == UmbilicalKind::Hypersphere) {
    out["centre"] = coords(f.datum.coords());
    out["radius"] = f.radius;
  }
  return out;
}

json disk_json(const Scene& s) {
  json out = json::object();
  if (!s.points.empty()) {
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back(coords(hyperboloid_to_ball(p).coords()));
    out["points"] = pts;
  }
  if (!s.horospheres.empty()) {
    json hs = json::array();
    for (const auto& h : s.horospheres) {
      const BallHorosphere b = horosphere_to_ball(h);
      hs.push_back({{"ideal_point", coords(b.ideal_point)},
                    {"euclidean_radius", b.euclidean_radius}});
    }
    out["horospheres"] = hs;
  }
  if (!s.hyperplanes.empty()) {
    json hs = json::array();
    for (const auto& h : s.hyperplanes) {
      const BallHyperplane b = hyperplane_to_ball(h);
      json e = {{"through_origin", b.through_origin}, {"centre", coords(b.centre)}};
      if (!b.through_origin) {
        e["radius"] = b.radius;
        e["sign"] = b.sign;
      }
      hs.push_back(e);
    }
    out["hyperplanes"] = hs;
  }
  return out;
}

void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

void require_only(const Scene& s, std::size_t points, std::size_t horospheres,
                  std::size_t hyperplanes, std::size_t spheres, std::size_t surfaces,
                  const std::string& theorem) {
  const bool types_ok = (points > 0 || s.points.empty()) &&
                        (horospheres > 0 || s.horospheres.empty()) &&
                        (hyperplanes > 0 || s.hyperplanes.empty()) &&
                        (spheres > 0 || s.spheres.empty()) && (surfaces > 0 || s.surfaces.empty());
  require(types_ok, ErrorCode::SchemaViolation,
          theorem + ": scene holds object types the theorem does not take");
  const auto check = [&](std::size_t have, std::size_t want, const char* what) {
    require(have == want, ErrorCode::WrongCount,
            theorem + " needs " + std::to_string(want) + " " + what + ", scene has " +
                std::to_string(have));
  };
  if (points > 0) check(s.points.size(), points, "points");
  if (horospheres > 0) check(s.horospheres.size(), horospheres, "horospheres");
  if (hyperplanes > 0) check(s.hyperplanes.size(), hyperplanes, "hyperplanes");
  if (spheres > 0) check(s.spheres.size(), spheres, "sphere_e objects");
}

/// ptolemy1 surface: one hypersphere/equidistant/umbilical object, or one
/// horosphere.
UmbilicalSurface ptolemy1_surface(const Scene& s) {
  const std::size_t total = s.surfaces.size() + s.horospheres.size();
  require(total == 1, ErrorCode::WrongCount, "ptolemy1 needs exactly one surface object");
  require(s.hyperplanes.empty() && s.spheres.empty(), ErrorCode::SchemaViolation,
          "ptolemy1: scene holds object types the theorem does not take");
  require(s.points.size() == static_cast<std::size_t>(s.dimension + 1), ErrorCode::WrongCount,
          "ptolemy1 needs n+1 points");
  if (!s.horospheres.empty()) return s.horospheres.front();
  return s.surfaces.front();
}

Outcome verify(const Scene& s, const Options& opt) {
  Outcome o{base_report("verify", opt), kExitError};
  const std::size_t n = static_cast<std::size_t>(s.dimension);
  DegeneracyVerdict verdict;
  if (opt.theorem == "penner") {
    require_only(s, 0, n + 1, 0, 0, 0, opt.theorem);
    const PennerResult r = penner_test(s.horospheres, opt.tol);
    verdict = r.verdict;
    o.report["same_centre"] = r.same_centre;
    if (r.witness) {
      o.report["witness"] = {{"normal", coords(r.witness->normal().coords())},
                             {"residual", r.witness_residual}};
    }
  } else if (opt.theorem == "ptolemy1") {
    const UmbilicalSurface surface = ptolemy1_surface(s);
    const Ptolemy1Result r = ptolemy1_test(s.points, surface, opt.tol);
    verdict = r.verdict;
    if (r.witness) {
      o.report["witness"] = {{"normal", coords(r.witness->normal().coords())},
                             {"residual", r.witness_residual}};
    }
  } else if (opt.theorem == "ptolemy2") {
    require_only(s, n + 2, 0, 0, 0, 0, opt.theorem);
    verdict = ptolemy2_test(s.points, opt.tol);
  } else if (opt.theorem == "casey") {
    require_only(s, 0, 0, n + 1, 0, 0, opt.theorem);
    const CaseyVerdict r = casey_test(s.hyperplanes, opt.tol, opt.search_signs);
    verdict = r.verdict;
    o.report["signs"] = r.signs;
    if (r.casey_case) o.report["case"] = casey_case_json(*r.casey_case);
  } else if (opt.theorem == "casey-e") {
    require_only(s, 0, 0, 0, n + 2, 0, opt.theorem);
    const CaseyEVerdict r = corollary_d_test(s.spheres, opt.tol, opt.search_signs);
    verdict = r.verdict;
    o.report["signs"] = r.signs;
    o.report["lifted_verdict"] = verdict_json(r.lifted_verdict);
    o.report["lift_agrees"] = r.lift_agrees;
    if (r.casey_case) o.report["case"] = euclidean_case_json(*r.casey_case);
  } else {
    throw Error(ErrorCode::SchemaViolation, "unknown theorem '" + opt.theorem + "'");
  }
  o.report["verdict"] = verdict_json(verdict);
  o.code = verdict.is_degenerate ? kExitDegenerate : kExitNonDegenerate;
  return o;
}

Outcome classify_scene(const Scene& s, const Options& opt) {
  Outcome o{base_report("classify", opt), kExitError};
  const std::size_t n = static_cast<std::size_t>(s.dimension);
  DegeneracyVerdict verdict;
  if (opt.theorem == "ptolemy2") {
    require_only(s, n + 2, 0, 0, 0, 0, opt.theorem);
    verdict = ptolemy2_test(s.points, opt.tol);
    if (verdict.is_degenerate) o.report["case"] = umbilical_fit_json(ptolemy2_classify(s.points, opt.tol));
  } else if (opt.theorem == "casey") {
    require_only(s, 0, 0, n + 1, 0, 0, opt.theorem);
    const CaseyVerdict r = casey_test(s.hyperplanes, opt.tol, opt.search_signs);
    verdict = r.verdict;
    o.report["signs"] = r.signs;
    if (r.casey_case) o.report["case"] = casey_case_json(*r.casey_case);
  } else if (opt.theorem == "casey-e") {
    require_only(s, 0, 0, 0, n + 2, 0, opt.theorem);
    const CaseyEVerdict r = corollary_d_test(s.spheres, opt.tol, opt.search_signs);
    verdict = r.verdict;
    o.report["signs"] = r.signs;
    o.report["lift_agrees"] = r.lift_agrees;
    if (r.casey_case) o.report["case"] = euclidean_case_json(*r.casey_case);
  } else {
    throw Error(ErrorCode::SchemaViolation,
                "classify supports ptolemy2, casey and casey-e, not '" + opt.theorem + "'");
  }
  o.report["verdict"] = verdict_json(verdict);
  o.code = verdict.is_degenerate ? kExitDegenerate : kExitNonDegenerate;
  return o;
}

std::string_view alt_name(FourTermAlt a) {
  switch (a) {
    case FourTermAlt::Alt12_34:
      return "Alt12_34";
    case FourTermAlt::Alt13_24:
      return "Alt13_24";
    case FourTermAlt::Alt14_23:
      return "Alt14_23";
    case FourTermAlt::None:
      return "None";
  }
  return "None";
}

Outcome relation(const Scene& s, const Options& opt) {
  Outcome o{base_report("relation", opt), kExitError};
  const int kinds = int{!s.points.empty()} + int{!s.horospheres.empty()} +
                    int{!s.spheres.empty()} + int{!s.hyperplanes.empty()} +
                    int{!s.surfaces.empty()};
  require(kinds == 1 && s.hyperplanes.empty() && s.surfaces.empty(), ErrorCode::SchemaViolation,
          "relation needs four objects of one type: horosphere, point or sphere_e");
  const std::size_t count = s.points.size() + s.horospheres.size() + s.spheres.size();
  require(count == 4, ErrorCode::WrongCount, "relation needs exactly four objects");

  Eigen::Matrix4d x = Eigen::Matrix4d::Zero();
  std::string mode;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>(j);
      double v = 0.0;
      if (!s.horospheres.empty()) {
        mode = "lambda";
        v = lambda_length(s.horospheres[a], s.horospheres[b]);
      } else if (!s.points.empty()) {
        mode = "distance";
        v = 2.0 * std::sinh(0.5 * distance(s.points[a], s.points[b]));
      } else {
        mode = "tangent";
        v = tangent_length(s.spheres[a], s.spheres[b]);
      }
      x(i, j) = x(j, i) = v;
    }
  }
  const FourTermRelation r = four_term_relation(x, opt.tol);
  o.report["relation"] = {{"mode", mode},
                          {"which", alt_name(r.which)},
                          {"products", r.products},
                          {"residual", r.residual},
                          {"values", matrix_json(x)}};
  o.code = r.which != FourTermAlt::None ? kExitDegenerate : kExitNonDegenerate;
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SchemaViolation, "cannot read scene file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Command>
Outcome on_scene(std::string_view name, const std::string& path, const Options& opt,
                 Command&& command) {
  try {
    const Scene scene = parse_scene_text(read_file(path));
    Outcome o = command(scene, opt);
    o.report["input_digest"] = scene.digest;
    if (scene.seed) o.report["seed"] = *scene.seed;
    if (opt.emit_disk) o.report["disk"] = disk_json(scene);
    return o;
  } catch (const Error& e) {
    return {error_report(name, e.name(), e.what()), kExitError};
  } catch (const std::exception& e) {
    return {error_report(name, "InternalError", e.what()), kExitError};
  }
}

template <typename Command>
Outcome scene_command(std::string_view name, const Options& opt, Command&& command) {
  if (opt.scenes_dir.empty()) {
    if (opt.scene_path.empty()) {
      return {error_report(name, "SchemaViolation", "no scene file given"), kExitError};
    }
    return on_scene(name, opt.scene_path, opt, command);
  }
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(opt.scenes_dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  if (ec) return {error_report(name, "SchemaViolation", "cannot list " + opt.scenes_dir), kExitError};
  std::sort(files.begin(), files.end());
  json reports = json::array();
  int code = kExitDegenerate;
  for (const auto& f : files) {
    Outcome o = on_scene(name, f.string(), opt, command);
    reports.push_back({{"file", f.filename().string()}, {"exit_code", o.code}, {"report", o.report}});
    code = std::max(code, o.code);
  }
  json batch = base_report(name, opt);
  batch["reports"] = reports;
  return {batch, code};
}

GenSpec build_spec(const Options& opt) {
  GenSpec spec;
  spec.kind = parse_kind(opt.kind);
  spec.n = opt.n;
  spec.count = opt.count;
  spec.seed = opt.seed;
  for (const auto& kv : opt.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::InfeasibleParams, "parameter '" + kv + "' is not key=value");
    }
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      throw Error(ErrorCode::InfeasibleParams, "parameter '" + key + "' is not a number");
    }
    // "λ" is accepted as an alias of "lambda"
    spec.params[key == "\xCE\xBB" ? "lambda" : key] = v;
  }
  return spec;
}

Outcome generate_scene(const Options& opt) {
  try {
    const GenSpec spec = build_spec(opt);
    Configuration cfg = generate(spec);
    if (opt.perturb) {
      if (!(*opt.perturb >= 0.0) || !std::isfinite(*opt.perturb)) {
        throw Error(ErrorCode::InfeasibleParams, "perturbation must be >= 0");
      }
      cfg = perturb(cfg, *opt.perturb, spec.seed);
    }
    return {scene_json(cfg, spec, opt.perturb), kExitDegenerate};
  } catch (const Error& e) {
    return {error_report("generate", e.name(), e.what()), kExitError};
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gram-determinant tests for configurations in hyperbolic and Euclidean space",
               "lgram"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::string> verify_theorems{"penner", "ptolemy1", "ptolemy2", "casey",
                                                 "casey-e"};
  const std::vector<std::string> classify_theorems{"ptolemy2", "casey", "casey-e"};

  const auto add_scene_options = [&](CLI::App* sub) {
    sub->add_option("scene", opt.scene_path, "Scene file (JSON)");
    sub->add_option("--scenes-dir", opt.scenes_dir, "Process every *.json file in a directory");
    sub->add_option("--tol", opt.tol, "Relative degeneracy tolerance")->check(CLI::PositiveNumber);
    sub->add_flag("--emit-disk", opt.emit_disk, "Add Poincare ball coordinates to the report");
  };

  CLI::App* verify_cmd = app.add_subcommand("verify", "Decide degeneracy of a scene");
  add_scene_options(verify_cmd);
  verify_cmd->add_option("--theorem", opt.theorem)->required()->check(CLI::IsMember(verify_theorems));
  verify_cmd->add_flag("--search-signs,!--no-search-signs", opt.search_signs,
                       "Search over coorientations (casey, casey-e)");

  CLI::App* classify_cmd = app.add_subcommand("classify", "Extract a geometric witness");
  add_scene_options(classify_cmd);
  classify_cmd->add_option("--theorem", opt.theorem)
      ->required()
      ->check(CLI::IsMember(classify_theorems));
  classify_cmd->add_flag("--search-signs,!--no-search-signs", opt.search_signs,
                         "Search over coorientations (casey, casey-e)");

  CLI::App* relation_cmd = app.add_subcommand("relation", "Four-term Ptolemy-type relation");
  add_scene_options(relation_cmd);

  CLI::App* generate_cmd = app.add_subcommand("generate", "Write a generated scene");
  generate_cmd->add_option("--kind", opt.kind, "Generator kind")->required();
  generate_cmd->add_option("--n", opt.n, "Hyperbolic dimension")->check(CLI::Range(2, 64));
  generate_cmd->add_option("--count", opt.count, "Number of objects");
  generate_cmd->add_option("--seed", opt.seed, "64-bit seed");
  generate_cmd->add_option("--params", opt.params, "Kind parameters as key=value");
  generate_cmd->add_option("--perturb", opt.perturb, "Perturbation magnitude");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitDegenerate;
  } catch (const CLI::ParseError& e) {
    out << dump(error_report("usage", "SchemaViolation", e.what())) << '\n';
    err << e.what() << '\n';
    return kExitError;
  }

  Outcome o;
  if (verify_cmd->parsed()) {
    o = scene_command("verify", opt, verify);
  } else if (classify_cmd->parsed()) {
    o = scene_command("classify", opt, classify_scene);
  } else if (relation_cmd->parsed()) {
    o = scene_command("relation", opt, relation);
  } else {
    o = generate_scene(opt);
  }
  out << dump(o.report) << '\n';
  return o.code;
}

}  // namespace lgram::cli
