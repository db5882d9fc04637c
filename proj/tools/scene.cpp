#include "cli.hpp"

#include "lgram/error.hpp"

#include <string>

namespace lgram::cli {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(where + ": missing \"" + key + "\"");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where + ": expected a number");
  return j.get<double>();
}

Eigen::VectorXd vector(const json& j, Eigen::Index size, const std::string& where) {
  if (!j.is_array()) schema_error(where + ": expected an array");
  if (static_cast<Eigen::Index>(j.size()) != size) {
    throw Error(ErrorCode::DimensionMismatch, where + ": expected " + std::to_string(size) +
                                                  " coordinates, got " +
                                                  std::to_string(j.size()));
  }
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    v[i] = number(j[static_cast<std::size_t>(i)], where);
  }
  return v;
}

json coords(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json surface_json(const Surface& s) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Horosphere>) {
          return {{"type", "horosphere"}, {"rep", coords(x.rep().coords())}};
        } else if constexpr (std::is_same_v<T, CoHyperplane>) {
          return {{"type", "hyperplane"}, {"normal", coords(x.normal().coords())}};
        } else if constexpr (std::is_same_v<T, Hypersphere>) {
          return {{"type", "hypersphere"},
                  {"centre", coords(x.centre().rep().coords())},
                  {"radius", x.radius()}};
        } else {
          return {{"type", "equidistant"},
                  {"normal", coords(x.normal().coords())},
                  {"offset", x.offset()}};
        }
      },
      s);
}

}  // namespace

std::string_view case_name(CaseyCaseKind k) {
  switch (k) {
    case CaseyCaseKind::TangentHyperplaneAtInfinity:
      return "tangent_hyperplane_at_infinity";
    case CaseyCaseKind::CommonIdealPoint:
      return "common_ideal_point";
    case CaseyCaseKind::OrthogonalAndEquallyInclined:
      return "orthogonal_equally_inclined";
  }
  return "unknown";
}

Scene parse_scene(const json& doc) {
  if (!doc.is_object()) schema_error("scene must be a JSON object");
  if (const auto it = doc.find("schema"); it != doc.end()) {
    if (!it->is_string() || it->get<std::string>() != kSchema) {
      schema_error("unsupported schema, expected \"" + std::string(kSchema) + "\"");
    }
  }
  Scene scene;
  const json& dim = field(doc, "dimension", "scene");
  if (!dim.is_number_integer() || dim.get<long long>() < 2) {
    schema_error("\"dimension\" must be an integer >= 2");
  }
  scene.dimension = dim.get<int>();
  const Eigen::Index n = scene.dimension;

  const json& objects = field(doc, "objects", "scene");
  if (!objects.is_array()) schema_error("\"objects\" must be an array");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const json& o = objects[i];
    const std::string where = "objects[" + std::to_string(i) + "]";
    if (!o.is_object()) schema_error(where + ": expected an object");
    const json& type = field(o, "type", where);
    if (!type.is_string()) schema_error(where + ": \"type\" must be a string");
    const std::string t = type.get<std::string>();
    if (t == "point") {
      scene.points.emplace_back(LorentzVector(vector(field(o, "coords", where), n + 1, where)));
    } else if (t == "horosphere") {
      scene.horospheres.emplace_back(LorentzVector(vector(field(o, "rep", where), n + 1, where)));
    } else if (t == "hyperplane") {
      scene.hyperplanes.emplace_back(
          LorentzVector(vector(field(o, "normal", where), n + 1, where)));
    } else if (t == "sphere_e") {
      int eps = 1;
      if (const auto e = o.find("eps"); e != o.end()) {
        if (!e->is_number_integer() || (e->get<int>() != 1 && e->get<int>() != -1)) {
          schema_error(where + ": \"eps\" must be 1 or -1");
        }
        eps = e->get<int>();
      }
      scene.spheres.emplace_back(vector(field(o, "centre", where), n, where),
                                 number(field(o, "radius", where), where), eps);
    } else if (t == "hypersphere") {
      scene.surfaces.emplace_back(
          Hypersphere(HPoint(LorentzVector(vector(field(o, "centre", where), n + 1, where))),
                      number(field(o, "radius", where), where)));
    } else if (t == "equidistant") {
      scene.surfaces.emplace_back(
          EquidistantBranch(LorentzVector(vector(field(o, "normal", where), n + 1, where)),
                            number(field(o, "offset", where), where)));
    } else if (t == "umbilical") {
      scene.surfaces.emplace_back(
          UmbilicalDatum{LorentzVector(vector(field(o, "datum", where), n + 1, where))});
    } else {
      schema_error(where + ": unknown object type \"" + t + "\"");
    }
  }
  if (const auto meta = doc.find("meta"); meta != doc.end()) {
    if (!meta->is_object()) schema_error("\"meta\" must be an object");
    if (const auto gen = meta->find("generator"); gen != meta->end() && gen->is_object()) {
      if (const auto s = gen->find("seed"); s != gen->end() && s->is_number_unsigned()) {
        scene.seed = s->get<std::uint64_t>();
      }
    }
  }
  scene.digest = sha256_hex(dump(doc, -1));
  return scene;
}

Scene parse_scene_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema_error(std::string("invalid JSON: ") + e.what());
  }
  return parse_scene(doc);
}

json scene_json(const Configuration& config, const GenSpec& spec,
                std::optional<double> perturbation) {
  json objects = json::array();
  for (const auto& p : config.points) {
    objects.push_back({{"type", "point"}, {"coords", coords(p.rep().coords())}});
  }
  for (const auto& h : config.horospheres) {
    objects.push_back({{"type", "horosphere"}, {"rep", coords(h.rep().coords())}});
  }
  for (const auto& h : config.hyperplanes) {
    objects.push_back({{"type", "hyperplane"}, {"normal", coords(h.normal().coords())}});
  }
  for (const auto& s : config.spheres) {
    objects.push_back({{"type", "sphere_e"},
                       {"centre", coords(s.centre())},
                       {"radius", s.radius()},
                       {"eps", s.eps()}});
  }

  json params = json::object();
  for (const auto& [k, v] : spec.params) params[k] = v;
  json generator = {{"kind", kind_name(config.kind)},
                    {"n", config.n},
                    {"seed", spec.seed},
                    {"params", params}};
  if (spec.count) generator["count"] = *spec.count;
  if (perturbation) generator["perturb"] = *perturbation;

  json truth = json::object();
  if (config.truth.surface) truth["surface"] = surface_json(*config.truth.surface);
  if (config.truth.boundary) {
    truth["boundary"] = {{"normal", coords(config.truth.boundary->normal().coords())}};
  }
  if (config.truth.casey) {
    json ws = json::array();
    for (const auto& w : config.truth.casey->witnesses) ws.push_back(coords(w.coords()));
    truth["case"] = {{"name", case_name(config.truth.casey->kind)}, {"witnesses", ws}};
    if (config.truth.casey->kind == CaseyCaseKind::OrthogonalAndEquallyInclined) {
      truth["case"]["lambda"] = config.truth.casey->lambda;
    }
  }

  return {{"schema", kSchema},
          {"dimension", config.n},
          {"objects", objects},
          {"meta", {{"generator", generator}, {"truth", truth}}}};
}

}  // namespace lgram::cli
