#include "test_support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vortex/analysis.hpp"
#include "vortex/error.hpp"
#include "vortex/scenario.hpp"

using namespace vt;

namespace {

Scenario center(ScenarioKind kind, double gamma) {
  ScenarioParams p;
  p.gamma = gamma;
  return build_scenario(kind, p);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidInput;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST(Scenario, TriangleWithCenter) {
  const Scenario s = center(ScenarioKind::TriangleWithCenter, 1.0);
  ASSERT_EQ(s.positions.size(), 4u);
  EXPECT_LT(std::abs(s.positions[0] - 1.0), 1e-15);
  EXPECT_LT(std::abs(s.positions[1] - std::polar(1.0, 2 * kPi / 3)), 1e-15);
  EXPECT_LT(std::abs(s.positions[2] - std::polar(1.0, 4 * kPi / 3)), 1e-15);
  EXPECT_EQ(s.positions[3], 0.0);
  EXPECT_EQ(s.circ, Circulations({1, 1, 1, 1}));
  EXPECT_EQ(s.circ.regime(), Regime::NonZeroTotal);
  EXPECT_EQ(center(ScenarioKind::TriangleWithCenter, -3.0).circ.regime(), Regime::ZeroTotal);
  EXPECT_EQ(center(ScenarioKind::SquareWithCenter, -4.0).circ.regime(), Regime::ZeroTotal);
  EXPECT_LT(max_abs(Vec(flatten(fixed_point(center(ScenarioKind::TriangleWithCenter, -3.0))) -
                        coords({3, 3, 1.5, -1.5 * kSqrt3}))),
            1e-14);
}

TEST(Scenario, Equilateral3AndPolygon) {
  const Scenario e = build_scenario(ScenarioKind::Equilateral3, {});
  EXPECT_LT(max_abs(Vec(flatten(fixed_point(e)) - coords({1, 1, 0.5, -kSqrt3 / 2}))), 1e-14);
  for (int m = 2; m <= 6; ++m) {
    ScenarioParams p;
    p.gamma = 0.7;
    p.sides = m;
    const Scenario s = build_scenario(ScenarioKind::PolygonWithCenter, p);
    EXPECT_EQ(static_cast<int>(s.positions.size()), m + 1);
    EXPECT_TRUE(is_fixed_point(fixed_point(s), s.circ).ok) << m;
  }
}

TEST(Scenario, RejectsBadParameters) {
  EXPECT_EQ(kind_of([] { center(ScenarioKind::TriangleWithCenter, 0.0); }), ErrorKind::ExcludedParameter);
  EXPECT_EQ(kind_of([] { build_scenario(ScenarioKind::TriangleWithCenter, {}); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { parse_scenario_kind("hexagon"); }), ErrorKind::InvalidInput);
  EXPECT_TRUE(is_excluded_gamma(ScenarioKind::TriangleWithCenter, -3.0));
  EXPECT_TRUE(is_excluded_gamma(ScenarioKind::SquareWithCenter, 0.0));
  EXPECT_FALSE(is_excluded_gamma(ScenarioKind::SquareWithCenter, -3.0));
  for (ScenarioKind k : {ScenarioKind::Equilateral3, ScenarioKind::TriangleWithCenter, ScenarioKind::SquareWithCenter,
                         ScenarioKind::PolygonWithCenter, ScenarioKind::Custom}) {
    EXPECT_EQ(parse_scenario_kind(to_string(k)), k);
  }
}

TEST(Scenario, CustomConfig) {
  const ScenarioConfig cfg = parse_scenario_config(
      R"({"positions": [[1, 0], [-0.5, 0.8660254037844386], [-0.5, -0.8660254037844386], [0, 0]],
          "circulations": [1, 1, 1, 0.5], "casimirs": [1]})");
  ASSERT_TRUE(cfg.kind.has_value());
  EXPECT_EQ(*cfg.kind, ScenarioKind::Custom);
  EXPECT_EQ(cfg.casimirs, std::vector<int>{1});
  const Scenario s = build_scenario(*cfg.kind, cfg.params);
  EXPECT_EQ(analyze(s).verdict, "CertifiedStable");
  EXPECT_EQ(kind_of([] { parse_scenario_config("{not json"); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { load_scenario_config("/nonexistent/config.json"); }), ErrorKind::IoError);
  const ScenarioConfig off = parse_scenario_config(R"({"positions": [[0,0],[1,0],[3,0.5]], "circulations": [1,2,3]})");
  EXPECT_EQ(kind_of([&] { analyze(build_scenario(*off.kind, off.params)); }), ErrorKind::NotAFixedPoint);
}

TEST(Analyze, Examples) {
  EXPECT_EQ(analyze(center(ScenarioKind::TriangleWithCenter, 0.5)).verdict, "CertifiedStable");
  EXPECT_EQ(analyze(center(ScenarioKind::SquareWithCenter, 3.0)).verdict, "LinearlyUnstable");
  ScenarioParams p;
  p.circulations = {1, 1, -1};
  const AnalysisReport r = analyze(build_scenario(ScenarioKind::Equilateral3, p));
  EXPECT_EQ(r.verdict, "LinearlyUnstable");
  EXPECT_GT(r.max_real_part, 0.0);
}

TEST(Analyze, ReportContents) {
  AnalysisOptions opts;
  opts.trajectory = TrajectorySpec{};
  opts.trajectory->t_end = 2.0;
  const AnalysisReport r = analyze(center(ScenarioKind::TriangleWithCenter, 0.5), opts);
  EXPECT_EQ(r.tool_version, kToolVersion);
  EXPECT_EQ(r.fixed_point.size(), 9u);
  EXPECT_EQ(r.spectrum.size(), 9u);
  ASSERT_TRUE(r.multipliers.has_value());
  EXPECT_EQ(r.multipliers->a0, 1.0);
  EXPECT_EQ(r.tangent_basis.size(), 4u);
  EXPECT_EQ(r.minors.size(), 4u);
  const std::vector<double> want{2.9047619, 0.3809524, 0.8299320, 0.0816327};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(r.minors[k], want[k], 1e-7);
  ASSERT_TRUE(r.drift.has_value());
  EXPECT_FALSE(r.drift->aborted);
  EXPECT_LT(r.drift->hamiltonian, 1e-8);
  EXPECT_LT(r.drift->max_constraint_residual, 1e-8);
}

TEST(Emit, JsonRoundTripAndDeterminism) {
  AnalysisOptions opts;
  opts.trajectory = TrajectorySpec{};
  opts.trajectory->t_end = 1.0;
  const AnalysisReport r = analyze(center(ScenarioKind::TriangleWithCenter, 0.5), opts);
  const std::string json = report_to_json(r);
  EXPECT_EQ(report_from_json(json), r);
  EXPECT_EQ(report_to_json(analyze(center(ScenarioKind::TriangleWithCenter, 0.5), opts)), json);
  const AnalysisReport u = analyze(center(ScenarioKind::SquareWithCenter, -0.25));
  EXPECT_EQ(report_from_json(report_to_json(u)), u);
  EXPECT_EQ(kind_of([] { report_from_json("[1, 2]"); }), ErrorKind::InvalidInput);
  const std::vector<std::string> csv = lines(report_to_csv(r));
  ASSERT_FALSE(csv.empty());
  EXPECT_EQ(csv[0], "field,value");
}

TEST(Emit, FilesAndErrors) {
  const AnalysisReport r = analyze(center(ScenarioKind::TriangleWithCenter, 0.5));
  const std::string path = ::testing::TempDir() + "report.json";
  emit(r, OutputFormat::Json, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(report_from_json(ss.str()), r);
  EXPECT_EQ(kind_of([&] { emit(r, OutputFormat::Json, "/nonexistent-dir/r.json"); }), ErrorKind::IoError);
}

TEST(Sweep, EmptyTableHasHeaderOnly) {
  SweepTable t;
  t.scenario = "triangle-center";
  const std::vector<std::string> csv = lines(sweep_to_csv(t));
  ASSERT_EQ(csv.size(), 1u);
  EXPECT_EQ(csv[0].rfind("gamma,verdict,max_re_lambda,a0", 0), 0u);
}

TEST(Sweep, RowCountsSkipsAndDeterminism) {
  const SweepTable t = gamma_sweep(ScenarioKind::TriangleWithCenter, -4.0, 1.5, 0.5);
  EXPECT_EQ(t.rows.size() + t.skipped.size(), 12u);
  EXPECT_EQ(t.skipped.size(), 2u);
  EXPECT_EQ(lines(sweep_to_csv(t)).size(), t.rows.size() + 1);
  for (std::size_t k = 1; k < t.rows.size(); ++k) EXPECT_LT(t.rows[k - 1].gamma, t.rows[k].gamma);
  EXPECT_EQ(sweep_to_csv(gamma_sweep(ScenarioKind::TriangleWithCenter, -4.0, 1.5, 0.5)), sweep_to_csv(t));
  const nlohmann::json j = nlohmann::json::parse(sweep_to_json(t));
  EXPECT_EQ(j.at("rows").size(), t.rows.size());
  EXPECT_EQ(kind_of([] { gamma_sweep(ScenarioKind::TriangleWithCenter, 0.0, 1.0, 0.0); }), ErrorKind::InvalidInput);
}

namespace {

void expect_regions(const SweepTable& t, const std::vector<std::pair<double, double>>& stable,
                    const std::vector<std::pair<double, double>>& unstable, double margin) {
  const auto inside = [&](double g, const std::vector<std::pair<double, double>>& iv) {
    return std::any_of(iv.begin(), iv.end(), [&](auto p) { return g > p.first + margin && g < p.second - margin; });
  };
  for (const SweepRow& r : t.rows) {
    if (inside(r.gamma, stable)) {
      EXPECT_EQ(r.verdict, "CertifiedStable") << r.gamma;
    }
    if (inside(r.gamma, unstable)) {
      EXPECT_EQ(r.verdict, "LinearlyUnstable") << r.gamma;
    }
    if (r.verdict == "CertifiedStable") {
      EXPECT_FALSE(inside(r.gamma, unstable)) << r.gamma;
    }
    if (r.verdict == "LinearlyUnstable") {
      EXPECT_FALSE(inside(r.gamma, stable)) << r.gamma;
    }
  }
}

}  // namespace

TEST(Sweep, TriangleRegions) {
  const SweepTable t = gamma_sweep(ScenarioKind::TriangleWithCenter, -5.0, 2.0, 0.1);
  EXPECT_EQ(t.rows.size(), 69u);
  const double inf = 1e9;
  expect_regions(t, {{-inf, -3.0}, {0.0, 1.0}}, {{1.0, inf}}, 0.1 + 1e-9);
  // Transitions bracket -3, 0 and 1.
  const auto verdict_at = [&](double g) {
    for (const SweepRow& r : t.rows)
      if (std::abs(r.gamma - g) < 1e-9) return r.verdict;
    return std::string();
  };
  EXPECT_EQ(verdict_at(-3.1), "CertifiedStable");
  EXPECT_NE(verdict_at(-2.9), "CertifiedStable");
  EXPECT_EQ(verdict_at(0.1), "CertifiedStable");
  EXPECT_NE(verdict_at(-0.1), "CertifiedStable");
  EXPECT_EQ(verdict_at(0.9), "CertifiedStable");
  EXPECT_EQ(verdict_at(1.1), "LinearlyUnstable");
}

TEST(Sweep, SquareRegions) {
  const SweepTable t = gamma_sweep(ScenarioKind::SquareWithCenter, -1.0, 3.0, 0.05);
  const double inf = 1e9;
  expect_regions(t, {{0.0, 2.25}}, {{-inf, -0.5}, {2.25, inf}}, 0.05 + 1e-9);
  const auto verdict_at = [&](double g) {
    for (const SweepRow& r : t.rows)
      if (std::abs(r.gamma - g) < 1e-9) return r.verdict;
    return std::string();
  };
  EXPECT_EQ(verdict_at(-0.55), "LinearlyUnstable");
  EXPECT_NE(verdict_at(-0.45), "LinearlyUnstable");
  EXPECT_EQ(verdict_at(0.05), "CertifiedStable");
  EXPECT_EQ(verdict_at(2.2), "CertifiedStable");
  EXPECT_EQ(verdict_at(2.3), "LinearlyUnstable");
}
