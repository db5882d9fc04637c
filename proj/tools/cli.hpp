#pragma once

// Command-line front end: scene files in, one JSON report out.
//
//   lgram verify   SCENE --theorem {penner|ptolemy1|ptolemy2|casey|casey-e}
//   lgram classify SCENE --theorem {ptolemy2|casey|casey-e}
//   lgram generate --kind K --n N [--count C] [--seed S] [--params k=v ...]
//   lgram relation SCENE
//
// Exit codes: 0 degenerate (or a four-term relation holds), 1 well-formed
// but non-degenerate, 2 any error.

#include "lgram/generators.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lgram::cli {

inline constexpr std::string_view kSchema = "lorentz-gram/1";

/// Deterministic serialisation: sorted keys, two-space indent, doubles as
/// shortest round-trip decimals, non-finite doubles as null. No trailing
/// newline. indent < 0 gives the compact form.
std::string dump(const nlohmann::json& j, int indent = 2);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Parsed scene. Object order within each list follows the file.
struct Scene {
  int dimension = 0;
  std::vector<HPoint> points;
  std::vector<Horosphere> horospheres;
  std::vector<CoHyperplane> hyperplanes;
  std::vector<CoSphereE> spheres;
  /// hypersphere, equidistant and umbilical objects
  std::vector<UmbilicalSurface> surfaces;
  std::optional<std::uint64_t> seed;
  /// SHA-256 of the compact canonical dump of the input document.
  std::string digest;
};

/// Throws Error(SchemaViolation) on malformed documents and the object
/// constructors' errors on invalid geometry.
Scene parse_scene(const nlohmann::json& doc);
Scene parse_scene_text(std::string_view text);

/// Scene document for a generated configuration, with the spec and the
/// constructed truth under "meta".
nlohmann::json scene_json(const Configuration& config, const GenSpec& spec,
                          std::optional<double> perturbation = std::nullopt);

/// snake_case report name of a Casey case.
std::string_view case_name(CaseyCaseKind kind);

/// Runs the CLI on argv-style arguments (without the program name). The
/// report or scene goes to `out`, usage problems to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lgram::cli
