#include "vortex/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace vortex {

namespace {

using nlohmann::json;

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

std::vector<std::vector<double>> rows_of(const Mat& m) {
  std::vector<std::vector<double>> out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_std(m.row(r).transpose()));
  return out;
}

double snap(double x) { return std::round(x * 1e12) / 1e12; }

}  // namespace

AnalysisReport analyze(const Scenario& scenario, const AnalysisOptions& options) {
  AnalysisReport r;
  r.scenario = scenario.name;
  r.kind = std::string(to_string(scenario.kind));
  r.gamma = scenario.gamma;
  r.circulations.assign(scenario.circ.gammas().begin(), scenario.circ.gammas().end());
  for (const Complex& q : scenario.positions) r.positions.push_back({q.real(), q.imag()});
  r.casimirs = options.casimirs;
  r.seed = options.seed;

  const MuMatrix mu0 = fixed_point(scenario);
  r.fixed_point = to_std(flatten(mu0));
  const FixedPointCheck fp = is_fixed_point(mu0, scenario.circ);
  r.fixed_point_residual = fp.residual;
  if (!fp.ok) {
    throw Error(ErrorKind::NotAFixedPoint,
                scenario.name + " is not a relative equilibrium (||X_h(mu0)||_inf = " +
                    format_double(fp.residual) + ")");
  }

  CertificateOptions co;
  co.casimirs = options.casimirs;
  co.seed = options.seed;
  if (options.use_reference_basis) co.preferred_basis = reference_tangent_basis(scenario);
  const CertificateResult cert = energy_casimir_certificate(mu0, scenario.circ, co);
  r.verdict = std::string(to_string(cert.verdict));
  for (const Complex& z : cert.spectrum) r.spectrum.push_back({z.real(), z.imag()});
  r.max_real_part = cert.max_real_part;
  if (cert.multipliers) {
    const MultiplierSet& m = *cert.multipliers;
    r.multipliers = MultiplierReport{m.a0,        m.hamiltonian_scale, to_std(m.a),         to_std(m.b),
                                     to_std(m.c), to_std(m.d),         m.residual,          m.solution_space_dim};
  }
  if (cert.tangent_basis) r.tangent_basis = rows_of(cert.tangent_basis->transpose());
  if (cert.restricted_hessian) r.restricted_hessian = rows_of(*cert.restricted_hessian);
  r.minors = cert.minors;
  r.basis_source = cert.basis_source;
  r.solution_index = cert.solution_index;
  r.reason = cert.reason;

  if (options.trajectory) {
    const TrajectorySpec& spec = *options.trajectory;
    const Trajectory traj = perturbed_trajectory(scenario, spec);
    const DriftReport dr = invariant_drift_report(traj);
    DriftSummary d;
    d.t_end = spec.t_end;
    d.dt = spec.dt;
    d.perturb = spec.perturb;
    d.aborted = traj.aborted;
    const Vec x0 = flatten(mu0);
    for (const Vec& x : traj.states) d.max_deviation = std::max(d.max_deviation, (x - x0).cwiseAbs().maxCoeff());
    d.hamiltonian = dr.hamiltonian.max;
    for (const QuantityDrift& c : dr.casimirs) d.casimirs.push_back(c.max);
    d.max_constraint_residual = dr.max_constraint_residual;
    r.drift = d;
  }
  return r;
}

Trajectory perturbed_trajectory(const Scenario& scenario, const TrajectorySpec& spec) {
  RelativeCoordinates z = relative_coordinates(scenario.configuration());
  if (spec.perturb != 0.0) {
    SplitMix64 rng(spec.seed);
    std::vector<Complex> dz;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < z.z.size(); ++i) {
      dz.emplace_back(rng.normal(), rng.normal());
      norm2 += std::norm(dz.back());
    }
    const double scale = spec.perturb / std::sqrt(norm2);
    for (std::size_t i = 0; i < z.z.size(); ++i) z.z[i] += scale * dz[i];
  }
  return integrate(flatten(moment_map(z)), scenario.circ, spec.t_end, spec.dt);
}

SweepTable gamma_sweep(ScenarioKind kind, double from, double to, double step,
                       const AnalysisOptions& options, int sides) {
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(from) || !std::isfinite(to)) {
    throw Error(ErrorKind::InvalidInput, "sweep needs finite bounds and a positive step");
  }
  if (kind == ScenarioKind::Equilateral3 || kind == ScenarioKind::Custom) {
    throw Error(ErrorKind::InvalidInput, "sweeps need a scenario with a center circulation");
  }
  SweepTable table;
  table.scenario = std::string(to_string(kind));
  std::vector<double> grid;
  if (to >= from) {
    const auto count = static_cast<long long>(std::floor((to - from) / step + 1e-9)) + 1;
    for (long long k = 0; k < count; ++k) {
      const double g = snap(from + static_cast<double>(k) * step);
      if (is_excluded_gamma(kind, g, sides)) {
        table.skipped.push_back(g);
      } else {
        grid.push_back(g);
      }
    }
  }
  table.rows.resize(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      SweepRow& row = table.rows[i];
      row.gamma = grid[i];
      try {
        ScenarioParams p;
        p.gamma = grid[i];
        p.sides = sides;
        const AnalysisReport r = analyze(build_scenario(kind, p), options);
        row.verdict = r.verdict;
        row.max_real_part = r.max_real_part;
        row.minors = r.minors;
        if (r.multipliers) row.a0 = r.multipliers->a0;
        if (r.verdict != "CertifiedStable") row.note = r.reason;
      } catch (const Error& e) {
        row.verdict = "Error";
        row.note = e.what();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto threads = std::min<std::size_t>(hw, std::max<std::size_t>(1, grid.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return table;
}

std::string report_to_json(const AnalysisReport& r) {
  json j;
  j["tool_version"] = r.tool_version;
  j["scenario"] = r.scenario;
  j["kind"] = r.kind;
  j["gamma"] = r.gamma ? json(*r.gamma) : json(nullptr);
  j["circulations"] = r.circulations;
  j["positions"] = r.positions;
  j["fixed_point"] = r.fixed_point;
  j["fixed_point_residual"] = r.fixed_point_residual;
  j["casimirs"] = r.casimirs;
  j["verdict"] = r.verdict;
  j["spectrum"] = r.spectrum;
  j["max_real_part"] = r.max_real_part;
  if (r.multipliers) {
    const MultiplierReport& m = *r.multipliers;
    j["multipliers"] = {{"a0", m.a0},
                        {"hamiltonian_scale", m.hamiltonian_scale},
                        {"a", m.a},
                        {"b", m.b},
                        {"c", m.c},
                        {"d", m.d},
                        {"residual", m.residual},
                        {"solution_space_dim", m.solution_space_dim}};
  } else {
    j["multipliers"] = nullptr;
  }
  j["tangent_basis"] = r.tangent_basis;
  j["restricted_hessian"] = r.restricted_hessian;
  j["minors"] = r.minors;
  j["basis_source"] = r.basis_source;
  j["solution_index"] = r.solution_index;
  j["seed"] = r.seed;
  j["reason"] = r.reason;
  if (r.drift) {
    const DriftSummary& d = *r.drift;
    j["drift"] = {{"t_end", d.t_end},
                  {"dt", d.dt},
                  {"perturb", d.perturb},
                  {"aborted", d.aborted},
                  {"max_deviation", d.max_deviation},
                  {"hamiltonian", d.hamiltonian},
                  {"casimirs", d.casimirs},
                  {"max_constraint_residual", d.max_constraint_residual}};
  } else {
    j["drift"] = nullptr;
  }
  return j.dump(2) + "\n";
}

AnalysisReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    AnalysisReport r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.scenario = j.at("scenario").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    if (!j.at("gamma").is_null()) r.gamma = j.at("gamma").get<double>();
    r.circulations = j.at("circulations").get<std::vector<double>>();
    r.positions = j.at("positions").get<std::vector<std::array<double, 2>>>();
    r.fixed_point = j.at("fixed_point").get<std::vector<double>>();
    r.fixed_point_residual = j.at("fixed_point_residual").get<double>();
    r.casimirs = j.at("casimirs").get<std::vector<int>>();
    r.verdict = j.at("verdict").get<std::string>();
    r.spectrum = j.at("spectrum").get<std::vector<std::array<double, 2>>>();
    r.max_real_part = j.at("max_real_part").get<double>();
    if (const json& m = j.at("multipliers"); !m.is_null()) {
      r.multipliers = MultiplierReport{m.at("a0").get<double>(),
                                       m.at("hamiltonian_scale").get<double>(),
                                       m.at("a").get<std::vector<double>>(),
                                       m.at("b").get<std::vector<double>>(),
                                       m.at("c").get<std::vector<double>>(),
                                       m.at("d").get<std::vector<double>>(),
                                       m.at("residual").get<double>(),
                                       m.at("solution_space_dim").get<int>()};
    }
    r.tangent_basis = j.at("tangent_basis").get<std::vector<std::vector<double>>>();
    r.restricted_hessian = j.at("restricted_hessian").get<std::vector<std::vector<double>>>();
    r.minors = j.at("minors").get<std::vector<double>>();
    r.basis_source = j.at("basis_source").get<std::string>();
    r.solution_index = j.at("solution_index").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.reason = j.at("reason").get<std::string>();
    if (const json& d = j.at("drift"); !d.is_null()) {
      r.drift = DriftSummary{d.at("t_end").get<double>(),
                             d.at("dt").get<double>(),
                             d.at("perturb").get<double>(),
                             d.at("aborted").get<bool>(),
                             d.at("max_deviation").get<double>(),
                             d.at("hamiltonian").get<double>(),
                             d.at("casimirs").get<std::vector<double>>(),
                             d.at("max_constraint_residual").get<double>()};
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed report: ") + e.what());
  }
}

std::string report_to_csv(const AnalysisReport& r) {
  std::ostringstream out;
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
    return s;
  };
  out << "field,value\n";
  out << "scenario," << r.scenario << '\n';
  out << "gamma," << (r.gamma ? format_double(*r.gamma) : "") << '\n';
  out << "verdict," << r.verdict << '\n';
  out << "max_real_part," << format_double(r.max_real_part) << '\n';
  out << "fixed_point_residual," << format_double(r.fixed_point_residual) << '\n';
  out << "fixed_point," << list(r.fixed_point) << '\n';
  out << "minors," << list(r.minors) << '\n';
  if (r.multipliers) {
    out << "a0," << format_double(r.multipliers->a0) << '\n';
    out << "a," << list(r.multipliers->a) << '\n';
    out << "b," << list(r.multipliers->b) << '\n';
    out << "c," << list(r.multipliers->c) << '\n';
    out << "d," << list(r.multipliers->d) << '\n';
  }
  return out.str();
}

std::string sweep_to_csv(const SweepTable& t) {
  std::size_t k = 0;
  for (const SweepRow& row : t.rows) k = std::max(k, row.minors.size());
  std::ostringstream out;
  out << "gamma,verdict,max_re_lambda,a0";
  for (std::size_t i = 1; i <= k; ++i) out << ",d" << i;
  out << ",note\n";
  for (const SweepRow& row : t.rows) {
    out << format_double(row.gamma) << ',' << row.verdict << ',' << format_double(row.max_real_part)
        << ',' << format_double(row.a0);
    for (std::size_t i = 0; i < k; ++i) {
      out << ',';
      if (i < row.minors.size()) out << format_double(row.minors[i]);
    }
    std::string note = row.note;
    std::replace(note.begin(), note.end(), '"', '\'');
    out << ",\"" << note << "\"\n";
  }
  return out.str();
}

std::string sweep_to_json(const SweepTable& t) {
  json rows = json::array();
  for (const SweepRow& row : t.rows) {
    rows.push_back({{"gamma", row.gamma},
                    {"verdict", row.verdict},
                    {"max_real_part", row.max_real_part},
                    {"a0", row.a0},
                    {"minors", row.minors},
                    {"note", row.note}});
  }
  json j{{"tool_version", kToolVersion}, {"scenario", t.scenario}, {"rows", rows}, {"skipped", t.skipped}};
  return j.dump(2) + "\n";
}

void write_text(const std::string& text, const std::string& path) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  file << text;
  if (!file.flush()) throw Error(ErrorKind::IoError, "failed writing " + path);
}

void emit(const AnalysisReport& r, OutputFormat format, const std::string& path) {
  write_text(format == OutputFormat::Json ? report_to_json(r) : report_to_csv(r), path);
}

void emit(const SweepTable& t, OutputFormat format, const std::string& path) {
  write_text(format == OutputFormat::Json ? sweep_to_json(t) : sweep_to_csv(t), path);
}

}  // namespace vortex
