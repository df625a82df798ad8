#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vortex/dynamics.hpp"
#include "vortex/scenario.hpp"
#include "vortex/stability.hpp"

namespace vortex {

inline constexpr const char* kToolVersion = "vortex 1.0.0";

struct TrajectorySpec {
  double t_end = 20.0;
  double dt = 1e-2;
  /// Size of the perturbation of the relative coordinates z (2-norm).
  double perturb = 1e-4;
  std::uint64_t seed = 0x5EED5EEDULL;
};

struct AnalysisOptions {
  std::vector<int> casimirs{1};
  /// Use the scenario's written-out tangent basis when it is valid.
  bool use_reference_basis = true;
  std::uint64_t seed = 0x5EED5EEDULL;
  /// Also run a perturbed reduced trajectory and report drifts.
  std::optional<TrajectorySpec> trajectory;
};

struct MultiplierReport {
  double a0 = 0.0;
  double hamiltonian_scale = 0.0;
  std::vector<double> a, b, c, d;
  double residual = 0.0;
  int solution_space_dim = 0;
  bool operator==(const MultiplierReport&) const = default;
};

struct DriftSummary {
  double t_end = 0.0;
  double dt = 0.0;
  double perturb = 0.0;
  bool aborted = false;
  double max_deviation = 0.0;  // max_t ||x(t) - x0||_inf
  double hamiltonian = 0.0;    // max drift
  std::vector<double> casimirs;
  double max_constraint_residual = 0.0;
  bool operator==(const DriftSummary&) const = default;
};

/// Plain-data view of an analysis, serializable without loss.
struct AnalysisReport {
  std::string tool_version = kToolVersion;
  std::string scenario;
  std::string kind;
  std::optional<double> gamma;
  std::vector<double> circulations;
  std::vector<std::array<double, 2>> positions;
  std::vector<double> fixed_point;
  double fixed_point_residual = 0.0;
  std::vector<int> casimirs;
  std::string verdict;
  std::vector<std::array<double, 2>> spectrum;  // (Re, Im)
  double max_real_part = 0.0;
  std::optional<MultiplierReport> multipliers;
  std::vector<std::vector<double>> tangent_basis;  // one entry per basis vector
  std::vector<std::vector<double>> restricted_hessian;
  std::vector<double> minors;
  std::string basis_source;
  int solution_index = -1;
  std::uint64_t seed = 0;
  std::string reason;
  std::optional<DriftSummary> drift;
  bool operator==(const AnalysisReport&) const = default;
};

/// mu0 = J(z), fixed-point check, spectrum and certificate. Throws
/// NotAFixedPoint if the geometry is not a relative equilibrium.
AnalysisReport analyze(const Scenario& scenario, const AnalysisOptions& options = {});

/// Reduced trajectory from J(z0 + dz) with ||dz||_2 = spec.perturb in a
/// seeded random direction, so the start stays on the rank-one set.
Trajectory perturbed_trajectory(const Scenario& scenario, const TrajectorySpec& spec);

struct SweepRow {
  double gamma = 0.0;
  std::string verdict;  // a Verdict name, or "Error"
  double max_real_part = 0.0;
  double a0 = 0.0;  // sign used for the reported minors (0 if none)
  std::vector<double> minors;
  std::string note;
};

struct SweepTable {
  std::string scenario;
  std::vector<SweepRow> rows;
  std::vector<double> skipped;  // excluded grid points
};

/// Grid gamma_k = from + k step (snapped to 1e-12), points evaluated
/// concurrently and assembled in gamma order. Excluded gamma values are
/// skipped; per-point failures are recorded in the row.
SweepTable gamma_sweep(ScenarioKind kind, double from, double to, double step,
                       const AnalysisOptions& options = {}, int sides = 0);

enum class OutputFormat { Json, Csv };

std::string report_to_json(const AnalysisReport& r);
/// Throws InvalidInput on malformed input.
AnalysisReport report_from_json(const std::string& text);
/// Two-column field,value listing.
std::string report_to_csv(const AnalysisReport& r);

/// gamma,verdict,max_re_lambda,a0,d1..dK,note (K = most minors in any row).
std::string sweep_to_csv(const SweepTable& t);
std::string sweep_to_json(const SweepTable& t);

/// Writes to path, or stdout for "-". Throws IoError.
void emit(const AnalysisReport& r, OutputFormat format, const std::string& path);
void emit(const SweepTable& t, OutputFormat format, const std::string& path);
void write_text(const std::string& text, const std::string& path);

}  // namespace vortex
