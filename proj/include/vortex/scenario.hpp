#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vortex/algebra.hpp"
#include "vortex/hamiltonian.hpp"

namespace vortex {

enum class ScenarioKind { Equilateral3, TriangleWithCenter, SquareWithCenter, PolygonWithCenter, Custom };

std::string_view to_string(ScenarioKind kind);
/// Accepts equilateral3, triangle-center, square-center, polygon-center,
/// custom. Throws InvalidInput for anything else.
ScenarioKind parse_scenario_kind(std::string_view name);

struct ScenarioParams {
  /// Center circulation for the *WithCenter kinds.
  std::optional<double> gamma;
  /// Vertex count for PolygonWithCenter.
  int sides = 0;
  /// Equilateral3 (default 1,1,1) and Custom.
  std::vector<double> circulations;
  /// Custom only.
  std::vector<Complex> positions;
};

struct Scenario {
  ScenarioKind kind;
  std::string name;
  std::vector<Complex> positions;
  Circulations circ;
  std::optional<double> gamma;
  int sides = 0;  // polygon vertices for the *WithCenter kinds

  VortexConfiguration configuration() const { return {positions, circ}; }
};

/// Vertex k of an m-gon sits at e^{2 pi i k/m} (unit circumradius), center
/// vortex last at the origin. Equilateral3 uses unit side length, so mu0 =
/// (1, 1, 1/2, -sqrt3/2). gamma = -m gives the zero-total-circulation
/// configuration. Throws ExcludedParameter for gamma = 0 and InvalidInput
/// for missing or malformed parameters.
Scenario build_scenario(ScenarioKind kind, const ScenarioParams& params);

/// gamma values a sweep skips: 0 and -m (the total-circulation boundary).
bool is_excluded_gamma(ScenarioKind kind, double gamma, int sides = 0);

/// J of the relative coordinates.
MuMatrix fixed_point(const Scenario& s);

/// Tangent bases (columns) written out for the built-in scenarios, in
/// coordinates. Empty when none is known for this scenario.
std::optional<Mat> reference_tangent_basis(const Scenario& s);

/// Reads {"positions": [[x, y], ...], "circulations": [...]} plus optional
/// "scenario", "gamma", "sides", "casimirs" keys. Throws IoError or
/// InvalidInput.
struct ScenarioConfig {
  std::optional<ScenarioKind> kind;
  ScenarioParams params;
  std::vector<int> casimirs;
};
ScenarioConfig load_scenario_config(const std::string& path);
ScenarioConfig parse_scenario_config(const std::string& json_text);

}  // namespace vortex
