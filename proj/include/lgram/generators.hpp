#pragma once

// Seeded samplers for every configuration class the theorems speak about,
// plus controlled perturbations that break the constraint but keep every
// object well formed.

#include "lgram/geometry.hpp"
#include "lgram/theorems.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lgram {

enum class GenKind {
  PointsOnHorosphere,
  PointsOnHypersphere,
  PointsOnHyperplane,
  PointsOnEquidistant,
  HorospheresOnHyperplaneBoundary,
  HyperplanesTangentAtInfinity,
  HyperplanesCommonIdealPoint,
  HyperplanesOrthogonalEquallyInclined,
  GenericPoints,
  GenericHorospheres,
  GenericHyperplanes,
  SpheresTangentToCircle,
  SpheresThroughPoint,
};

/// All kinds, in declaration order.
const std::vector<GenKind>& all_kinds();
/// snake_case name used on the command line, e.g. "points_on_hypersphere".
std::string_view kind_name(GenKind kind) noexcept;
/// Throws InfeasibleParams for an unknown name.
GenKind parse_kind(std::string_view name);

/// Theorem-sized object count: n+2 for points and Euclidean spheres, n+1 for
/// horospheres and hyperplanes.
int default_count(GenKind kind, int n);

/// Kind-specific parameters (all optional, random when absent):
///   radius   hypersphere radius (> 0)
///   offset   equidistant offset <x, normal> (!= 0)
///   lambda   equal inclination, 0 <= lambda < 1
///   spread   scale of random chart coordinates (> 0, default 1)
struct GenSpec {
  GenKind kind = GenKind::GenericPoints;
  int n = 2;
  std::optional<int> count;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
};

/// The constraint a generated configuration satisfies by construction.
struct GenTruth {
  /// Point kinds: the surface holding the points.
  std::optional<Surface> surface;
  /// Horospheres on a hyperplane boundary: that hyperplane.
  std::optional<CoHyperplane> boundary;
  /// Hyperplane kinds, and sphere kinds through the lift: the Casey case.
  std::optional<CaseyCase> casey;
};

struct Configuration {
  GenKind kind = GenKind::GenericPoints;
  int n = 2;
  std::vector<HPoint> points;
  std::vector<Horosphere> horospheres;
  std::vector<CoHyperplane> hyperplanes;
  std::vector<CoSphereE> spheres;
  GenTruth truth;
};

/// Deterministic for a fixed GenSpec. Throws InfeasibleParams for invalid
/// parameters and RejectionFailed when a generic sample keeps landing near
/// degeneracy.
Configuration generate(const GenSpec& spec);

/// Seeded noise of the given size in the model chart, then re-projection onto
/// the object invariants. Magnitude 0 returns the configuration unchanged;
/// the truth record is dropped otherwise.
Configuration perturb(const Configuration& config, double magnitude, std::uint64_t seed);

}  // namespace lgram
