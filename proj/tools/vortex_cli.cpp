// Command-line front end: analyze, sweep, integrate, check.
//
// Exit codes: 0 completed (any verdict), 2 invalid scenario or arguments,
// 3 numerical failure (including failed checks and aborted trajectories).

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vortex/analysis.hpp"
#include "vortex/paper_suite.hpp"

namespace {

using namespace vortex;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::Collision:
    case ErrorKind::NotInOpenSet:
    case ErrorKind::NotAFixedPoint:
    case ErrorKind::UnsupportedScenario:
    case ErrorKind::ExcludedParameter:
    case ErrorKind::IoError:
      return kExitInvalid;
    default:
      return kExitNumerical;
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "not an integer list: '" + text + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::InvalidInput, "empty integer list");
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct ScenarioArgs {
  std::string scenario;
  std::optional<double> gamma;
  int sides = 0;
  std::vector<double> circulations;
  std::string config;
  std::string casimirs;

  void add_to(CLI::App* cmd, bool with_gamma) {
    cmd->add_option("--scenario", scenario,
                    "equilateral3 | triangle-center | square-center | polygon-center | custom");
    if (with_gamma) cmd->add_option("--gamma", gamma, "center circulation");
    cmd->add_option("--sides", sides, "vertex count for polygon-center");
    cmd->add_option("--circulations", circulations, "circulations (equilateral3)")->delimiter(',');
    cmd->add_option("--config", config, "JSON config with positions/circulations");
  }

  // Flags override the config file.
  std::pair<Scenario, std::vector<int>> resolve() const {
    ScenarioConfig cfg;
    if (!config.empty()) cfg = load_scenario_config(config);
    if (!scenario.empty()) cfg.kind = parse_scenario_kind(scenario);
    if (!cfg.kind) throw Error(ErrorKind::InvalidInput, "--scenario or --config is required");
    if (gamma) cfg.params.gamma = gamma;
    if (sides != 0) cfg.params.sides = sides;
    if (!circulations.empty()) cfg.params.circulations = circulations;
    std::vector<int> cas = cfg.casimirs.empty() ? std::vector<int>{1} : cfg.casimirs;
    if (!casimirs.empty()) cas = parse_int_list(casimirs);
    return {build_scenario(*cfg.kind, cfg.params), cas};
  }
};

int run_check(const std::string& suite) {
  if (suite != "paper") throw Error(ErrorKind::InvalidInput, "unknown suite '" + suite + "'");
  int failed = 0;
  for (const CriterionResult& r : run_paper_suite()) {
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " " << r.title << ": " << r.detail
              << '\n';
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-Poisson point-vortex relative equilibria: spectra and Energy-Casimir certificates"};
  app.require_subcommand(1);

  ScenarioArgs analyze_args;
  std::string analyze_out = "-";
  std::uint64_t analyze_seed = 0x5EED5EEDULL;
  bool no_reference_basis = false;
  std::optional<double> corroborate;
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze one relative equilibrium");
  analyze_args.add_to(analyze_cmd, true);
  analyze_cmd->add_option("--casimirs", analyze_args.casimirs, "Casimir subset, e.g. 1 or 1,2");
  analyze_cmd->add_option("--out", analyze_out, "report path (.json or .csv), - for stdout");
  analyze_cmd->add_option("--seed", analyze_seed, "seed for randomized multiplier retries");
  analyze_cmd->add_flag("--no-reference-basis", no_reference_basis, "always use the SVD tangent basis");
  analyze_cmd->add_option("--corroborate", corroborate, "also integrate a perturbed trajectory to this time");

  ScenarioArgs sweep_args;
  double from = 0.0, to = 0.0, step = 0.0;
  std::string sweep_out = "-";
  auto* sweep_cmd = app.add_subcommand("sweep", "certificate verdicts over a gamma grid");
  sweep_args.add_to(sweep_cmd, false);
  sweep_cmd->add_option("--from", from, "first gamma")->required();
  sweep_cmd->add_option("--to", to, "last gamma")->required();
  sweep_cmd->add_option("--step", step, "grid step")->required();
  sweep_cmd->add_option("--casimirs", sweep_args.casimirs, "Casimir subset");
  sweep_cmd->add_option("--out", sweep_out, "table path (.csv or .json), - for stdout");

  ScenarioArgs integrate_args;
  TrajectorySpec spec;
  spec.perturb = 0.0;
  std::string integrate_out = "-";
  bool full = false;
  auto* integrate_cmd = app.add_subcommand("integrate", "RK4 trajectory from a perturbed equilibrium");
  integrate_args.add_to(integrate_cmd, true);
  integrate_cmd->add_option("--t-end", spec.t_end, "final time")->required();
  integrate_cmd->add_option("--dt", spec.dt, "step size")->required();
  integrate_cmd->add_option("--perturb", spec.perturb, "size of the perturbation of z");
  integrate_cmd->add_option("--seed", spec.seed, "perturbation direction seed");
  integrate_cmd->add_flag("--full", full, "integrate the full vortex system (unperturbed) and record J(z)");
  integrate_cmd->add_option("--out", integrate_out, "CSV path, - for stdout");

  std::string suite;
  auto* check_cmd = app.add_subcommand("check", "run the acceptance suite");
  check_cmd->add_option("--suite", suite, "suite name (paper)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*analyze_cmd) {
      auto [scenario, casimirs] = analyze_args.resolve();
      AnalysisOptions opts;
      opts.casimirs = casimirs;
      opts.seed = analyze_seed;
      opts.use_reference_basis = !no_reference_basis;
      if (corroborate) {
        TrajectorySpec t;
        t.t_end = *corroborate;
        opts.trajectory = t;
      }
      const AnalysisReport report = analyze(scenario, opts);
      emit(report, ends_with(analyze_out, ".csv") ? OutputFormat::Csv : OutputFormat::Json, analyze_out);
      if (analyze_out != "-") std::cerr << scenario.name << ": " << report.verdict << '\n';
      return kExitOk;
    }
    if (*sweep_cmd) {
      if (sweep_args.scenario.empty()) throw Error(ErrorKind::InvalidInput, "--scenario is required");
      const ScenarioKind kind = parse_scenario_kind(sweep_args.scenario);
      AnalysisOptions opts;
      if (!sweep_args.casimirs.empty()) opts.casimirs = parse_int_list(sweep_args.casimirs);
      const SweepTable table = gamma_sweep(kind, from, to, step, opts, sweep_args.sides);
      emit(table, ends_with(sweep_out, ".json") ? OutputFormat::Json : OutputFormat::Csv, sweep_out);
      for (double g : table.skipped) std::cerr << "skipped excluded gamma = " << format_double(g) << '\n';
      return kExitOk;
    }
    if (*integrate_cmd) {
      auto [scenario, casimirs] = integrate_args.resolve();
      (void)casimirs;
      const Trajectory traj = full ? integrate(scenario.configuration(), spec.t_end, spec.dt, SystemKind::Full)
                                   : perturbed_trajectory(scenario, spec);
      if (integrate_out == "-") {
        write_trajectory_csv(traj, std::cout);
      } else {
        write_trajectory_csv(traj, integrate_out);
      }
      if (traj.aborted) {
        std::cerr << "trajectory aborted: " << traj.abort_reason << '\n';
        return kExitNumerical;
      }
      return kExitOk;
    }
    if (*check_cmd) return run_check(suite);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitInvalid;
}
