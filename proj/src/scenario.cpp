#include "vortex/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "vortex/dynamics.hpp"

namespace vortex {

namespace {

std::vector<Complex> polygon(int m, double radius) {
  std::vector<Complex> q;
  for (int k = 0; k < m; ++k) q.push_back(std::polar(radius, 2.0 * std::numbers::pi * k / m));
  return q;
}

int sides_of(ScenarioKind kind, int sides) {
  switch (kind) {
    case ScenarioKind::TriangleWithCenter:
      return 3;
    case ScenarioKind::SquareWithCenter:
      return 4;
    case ScenarioKind::PolygonWithCenter:
      return sides;
    default:
      return 0;
  }
}

// Columns from rows of (index, coefficient) pairs.
Mat basis_from(int dim, std::initializer_list<std::initializer_list<std::pair<int, double>>> vs) {
  Mat b = Mat::Zero(dim, static_cast<Eigen::Index>(vs.size()));
  Eigen::Index c = 0;
  for (const auto& v : vs) {
    for (const auto& [i, a] : v) b(i, c) = a;
    ++c;
  }
  return b;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Equilateral3:
      return "equilateral3";
    case ScenarioKind::TriangleWithCenter:
      return "triangle-center";
    case ScenarioKind::SquareWithCenter:
      return "square-center";
    case ScenarioKind::PolygonWithCenter:
      return "polygon-center";
    case ScenarioKind::Custom:
      return "custom";
  }
  return "custom";
}

ScenarioKind parse_scenario_kind(std::string_view name) {
  for (auto k : {ScenarioKind::Equilateral3, ScenarioKind::TriangleWithCenter,
                 ScenarioKind::SquareWithCenter, ScenarioKind::PolygonWithCenter,
                 ScenarioKind::Custom}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorKind::InvalidInput, "unknown scenario '" + std::string(name) + "'");
}

bool is_excluded_gamma(ScenarioKind kind, double gamma, int sides) {
  const int m = sides_of(kind, sides);
  if (m == 0) return false;
  return gamma == 0.0 || std::abs(gamma + m) <= kZeroTotalRelTol * std::max(1.0, double(m));
}

Scenario build_scenario(ScenarioKind kind, const ScenarioParams& params) {
  switch (kind) {
    case ScenarioKind::Equilateral3: {
      std::vector<double> g = params.circulations.empty() ? std::vector<double>{1.0, 1.0, 1.0}
                                                          : params.circulations;
      if (g.size() != 3) throw Error(ErrorKind::InvalidInput, "equilateral3 needs three circulations");
      Circulations circ(std::move(g));
      return {kind, "equilateral3", polygon(3, 1.0 / std::sqrt(3.0)), circ, std::nullopt, 3};
    }
    case ScenarioKind::TriangleWithCenter:
    case ScenarioKind::SquareWithCenter:
    case ScenarioKind::PolygonWithCenter: {
      const int m = sides_of(kind, params.sides);
      if (m < 2) throw Error(ErrorKind::InvalidInput, "polygon-center needs at least 2 sides");
      if (!params.gamma || !std::isfinite(*params.gamma)) {
        throw Error(ErrorKind::InvalidInput, "scenario needs a finite center circulation gamma");
      }
      const double gamma = *params.gamma;
      if (gamma == 0.0) {
        throw Error(ErrorKind::ExcludedParameter, "gamma = 0 leaves the center without circulation");
      }
      std::vector<Complex> q = polygon(m, 1.0);
      q.emplace_back(0.0, 0.0);
      std::vector<double> g(static_cast<std::size_t>(m), 1.0);
      g.push_back(gamma);
      std::string name = std::string(to_string(kind));
      if (kind == ScenarioKind::PolygonWithCenter) name += "(" + std::to_string(m) + ")";
      return {kind, name, std::move(q), Circulations(std::move(g)), gamma, m};
    }
    case ScenarioKind::Custom: {
      if (params.positions.size() != params.circulations.size()) {
        throw Error(ErrorKind::InvalidInput, "custom scenario: positions and circulations differ in length");
      }
      Circulations circ(params.circulations);
      require_no_collision(params.positions);
      return {kind, "custom", params.positions, circ, std::nullopt, 0};
    }
  }
  throw Error(ErrorKind::InvalidInput, "unknown scenario kind");
}

MuMatrix fixed_point(const Scenario& s) {
  return moment_map(relative_coordinates(s.configuration()));
}

std::optional<Mat> reference_tangent_basis(const Scenario& s) {
  const double r3 = std::sqrt(3.0);
  const bool zero_total = s.circ.regime() == Regime::ZeroTotal;
  switch (s.kind) {
    case ScenarioKind::Equilateral3: {
      if (zero_total) return std::nullopt;
      const double g1 = s.circ[0], g2 = s.circ[1], g3 = s.circ[2];
      if (g1 == g2 && g2 == g3) return basis_from(4, {{{0, 1.0}, {2, 1.0}}, {{0, -1.0}, {1, 1.0}}});
      return basis_from(4, {{{0, r3 * g2 * (g1 + g3)}, {1, -r3 * g1 * (g2 + g3)}, {3, g3 * (g1 - g2)}},
                            {{0, g2 * (g1 - g3)}, {1, g1 * (g3 - g2)}, {2, g3 * (g1 - g2)}}});
    }
    case ScenarioKind::TriangleWithCenter:
      if (zero_total) return basis_from(4, {{{0, 1.0}, {2, 1.0}}, {{0, -1.0}, {1, 1.0}}});
      return basis_from(9, {{{0, r3}, {2, -r3}, {4, -1.0}, {8, 1.0}},
                            {{0, 1.0}, {2, -1.0}, {3, -1.0}, {7, 1.0}},
                            {{1, -r3}, {2, r3}, {4, 1.0}, {6, 1.0}},
                            {{1, 1.0}, {2, -1.0}, {3, -1.0}, {5, 1.0}}});
    case ScenarioKind::SquareWithCenter:
      if (zero_total) return std::nullopt;
      return basis_from(16, {{{4, 1.0}, {7, -1.0}, {8, -1.0}},
                             {{0, -1.0}, {1, 1.0}, {2, 1.0}, {3, -1.0}, {9, -1.0}, {11, -1.0}},
                             {{0, -1.0}, {1, 1.0}, {2, -1.0}, {3, 1.0}, {6, 1.0}, {12, -1.0}},
                             {{4, -1.0}, {10, 1.0}, {13, -1.0}},
                             {{7, -1.0}, {10, 1.0}, {14, -1.0}},
                             {{0, -1.0}, {1, -1.0}, {2, 1.0}, {3, 1.0}, {5, 1.0}, {15, -1.0}}});
    default:
      return std::nullopt;
  }
}

ScenarioConfig parse_scenario_config(const std::string& json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "config must be a JSON object");
  ScenarioConfig cfg;
  try {
    if (j.contains("scenario")) cfg.kind = parse_scenario_kind(j.at("scenario").get<std::string>());
    if (j.contains("gamma")) cfg.params.gamma = j.at("gamma").get<double>();
    if (j.contains("sides")) cfg.params.sides = j.at("sides").get<int>();
    if (j.contains("circulations")) cfg.params.circulations = j.at("circulations").get<std::vector<double>>();
    if (j.contains("positions")) {
      for (const auto& p : j.at("positions")) {
        if (!p.is_array() || p.size() != 2) {
          throw Error(ErrorKind::InvalidInput, "each position must be [x, y]");
        }
        cfg.params.positions.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
    }
    if (j.contains("casimirs")) cfg.casimirs = j.at("casimirs").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed config: ") + e.what());
  }
  if (!cfg.kind && !cfg.params.positions.empty()) cfg.kind = ScenarioKind::Custom;
  return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_config(ss.str());
}

}  // namespace vortex
