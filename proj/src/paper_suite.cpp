#include "vortex/paper_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "vortex/analysis.hpp"
#include "vortex/constraints.hpp"
#include "vortex/dynamics.hpp"
#include "vortex/hamiltonian.hpp"
#include "vortex/numerics.hpp"
#include "vortex/scenario.hpp"
#include "vortex/stability.hpp"

namespace vortex {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

// Worst error across a criterion's samples, plus the first failure.
class Tally {
 public:
  void record(double error, double tol, const std::string& what) {
    worst_ = std::max(worst_, error);
    ++count_;
    if (!(error <= tol) && failure_.empty()) failure_ = what + ": error " + format_double(error);
  }
  void fail(const std::string& what) {
    ++count_;
    if (failure_.empty()) failure_ = what;
  }
  CriterionResult result(int id, std::string title) const {
    CriterionResult r{id, std::move(title), failure_.empty(), {}};
    std::ostringstream s;
    s << count_ << " checks, worst error " << format_double(worst_);
    if (!failure_.empty()) s << "; first failure: " << failure_;
    r.detail = s.str();
    return r;
  }

 private:
  double worst_ = 0.0;
  int count_ = 0;
  std::string failure_;
};

double rel_error(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Relative error, falling back to absolute for expected zeros.
double mixed_error(double got, double want) {
  return want == 0.0 ? std::abs(got) : rel_error(got, want);
}

std::vector<Complex> pm(Complex z, int mult = 1) {
  std::vector<Complex> out;
  for (int i = 0; i < mult; ++i) {
    out.push_back(z);
    out.push_back(-z);
  }
  return out;
}

void append(std::vector<Complex>& to, const std::vector<Complex>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

std::vector<Complex> scenario_spectrum(const Scenario& s) {
  return spectrum(linearize(fixed_point(s), s.circ).matrix);
}

Scenario with_center(ScenarioKind kind, double gamma) {
  ScenarioParams p;
  p.gamma = gamma;
  return build_scenario(kind, p);
}

MuMatrix equilateral_mu0() {
  return unflatten((Vec(4) << 1.0, 1.0, 0.5, -kSqrt3 / 2.0).finished(), 2);
}

double random_circulation(SplitMix64& rng) {
  const double mag = rng.uniform(0.3, 2.0);
  return rng.uniform() < 0.5 ? -mag : mag;
}

std::vector<double> random_triple(SplitMix64& rng) {
  for (;;) {
    std::vector<double> g{random_circulation(rng), random_circulation(rng), random_circulation(rng)};
    if (std::abs(g[0] + g[1] + g[2]) > 0.1) return g;
  }
}

std::vector<Complex> random_z(SplitMix64& rng, int n) {
  std::vector<Complex> z;
  for (int i = 0; i < n; ++i) z.emplace_back(rng.normal(), rng.normal());
  return z;
}

Vec minors_of(const Mat& hessian) {
  const auto r = sylvester_verdict(hessian);
  return Eigen::Map<const Vec>(r.minors.data(), static_cast<Eigen::Index>(r.minors.size()));
}

// ---- 1-4: spectra and the Gamma = 0 fixtures ---------------------------

CriterionResult criterion_equilateral_spectrum() {
  Tally t;
  SplitMix64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> g = random_triple(rng);
    const Circulations circ(g);
    const double s2 = g[0] * g[1] + g[0] * g[2] + g[1] * g[2];
    std::vector<Complex> want{0.0, 0.0};
    append(want, pm(kSqrt3 / (2.0 * kPi) * std::sqrt(Complex(-s2, 0.0))));
    const auto got = spectrum(linearize(equilateral_mu0(), circ).matrix);
    t.record(multiset_distance(got, want), 1e-8, "Gamma = (" + format_double(g[0]) + ", " +
                                                    format_double(g[1]) + ", " + format_double(g[2]) + ")");
  }
  return t.result(1, "N=3 equilateral spectrum");
}

CriterionResult criterion_triangle_spectrum() {
  Tally t;
  for (double g : {-5.0, -2.0, 0.5, 2.0, 5.0}) {
    std::vector<Complex> want{0.0, 0.0, 0.0};
    append(want, pm(Complex(0.0, 1.0 / kPi)));
    append(want, pm(std::sqrt(Complex(g - 1.0, 0.0)) / (2.0 * kPi), 2));
    const auto got = scenario_spectrum(with_center(ScenarioKind::TriangleWithCenter, g));
    t.record(multiset_distance(got, want), 1e-8, "gamma = " + format_double(g));
  }
  return t.result(2, "triangle+center spectrum family");
}

CriterionResult criterion_square_spectrum() {
  Tally t;
  for (double g : {-1.0, 0.5, 1.0, 2.0, 3.0}) {
    std::vector<Complex> want{0.0, 0.0, 0.0, 0.0};
    append(want, pm(Complex(0.0, 1.0 / (4.0 * kPi))));
    append(want, pm(Complex(0.0, 1.0 / kPi)));
    append(want, pm(Complex(0.0, 5.0 / (4.0 * kPi))));
    append(want, pm(std::sqrt(Complex(-g - 0.5, 0.0)) / kPi));
    append(want, pm(std::sqrt(Complex(g - 2.25, 0.0)) / (2.0 * kPi), 2));
    const auto got = scenario_spectrum(with_center(ScenarioKind::SquareWithCenter, g));
    t.record(multiset_distance(got, want), 1e-8, "gamma = " + format_double(g));
  }
  return t.result(3, "square+center spectrum family");
}

CriterionResult criterion_zero_total_fixtures() {
  Tally t;
  // Triangle with center, Gamma = 0: C1 = (2/3)(mu1 + mu2 - mu3), C2 = det mu, written-out basis.
  const Scenario tri = with_center(ScenarioKind::TriangleWithCenter, -3.0);
  const MuMatrix mu0 = fixed_point(tri);
  const Vec want_mu0 = (Vec(4) << 3.0, 3.0, 1.5, -1.5 * kSqrt3).finished();
  t.record((flatten(mu0) - want_mu0).cwiseAbs().maxCoeff(), 1e-12, "triangle Gamma=0 mu0");
  const CouplingMatrix k0 = build_coupling_matrix(tri.circ);
  SplitMix64 rng(304);
  for (int i = 0; i < 5; ++i) {
    const MuMatrix mu = MuMatrix::outer(random_z(rng, 2));
    const double printed = scenario_casimir_c1(mu, tri.circ, PrintedCasimir::TriangleWithCenterZeroTotal);
    t.record(std::abs(printed - casimir(mu, k0, 1)), 1e-12, "printed C1 vs tr(i K0 mu)");
  }
  const Mat basis = (Mat(4, 2) << 1, -1, 0, 1, 1, 0, 0, 0).finished();
  const std::vector<int> c1{1};
  for (double c0 : {1.0, -1.0}) {
    const MultiplierSet m = solve_multiplier_system(mu0, tri.circ, c1, c0);
    t.record(std::abs(m.a[0] + 2.0 * c0), 1e-10, "triangle Gamma=0 c1 = -2 c0");
    t.record(std::abs(m.b[0]), 1e-10, "triangle Gamma=0 c2 = 0");
    const Mat h = restricted_hessian(mu0, tri.circ, m, basis);
    const Mat want = (c0 / 9.0) * (Mat(2, 2) << -4, 2, 2, -4).finished();
    t.record((h - want).cwiseAbs().maxCoeff(), 1e-10, "triangle Gamma=0 restricted Hessian");
  }
  // Square with center, Gamma = 0.
  const Scenario sq = with_center(ScenarioKind::SquareWithCenter, -4.0);
  const Vec want_sq = (Vec(9) << 2, 4, 2, 2, -2, 0, -2, 2, -2).finished();
  t.record((flatten(fixed_point(sq)) - want_sq).cwiseAbs().maxCoeff(), 1e-12, "square Gamma=0 mu0");
  std::vector<Complex> want{0.0, 0.0, 0.0};
  append(want, pm(std::sqrt(3.5) / kPi));
  append(want, pm(Complex(0.0, 5.0 / (4.0 * kPi))));
  append(want, pm(Complex(0.0, 1.0 / (4.0 * kPi))));
  t.record(multiset_distance(scenario_spectrum(sq), want), 1e-8, "square Gamma=0 spectrum");
  return t.result(4, "zero-total-circulation fixtures");
}

// ---- 5-6: multipliers and minors ----------------------------------------

void compare(Tally& t, const Vec& got, const std::vector<double>& want, double tol, const std::string& what) {
  if (got.size() != static_cast<Eigen::Index>(want.size())) {
    t.fail(what + ": length " + std::to_string(got.size()));
    return;
  }
  for (std::size_t i = 0; i < want.size(); ++i) {
    t.record(mixed_error(got[static_cast<Eigen::Index>(i)], want[i]), tol, what + " [" + std::to_string(i) + "]");
  }
}

Vec unknowns(const MultiplierSet& m) {
  Vec w = m.constraint_weights();
  Vec u(m.a.size() + w.size());
  u << m.a, w;
  return u;
}

CriterionResult criterion_multipliers() {
  Tally t;
  const std::vector<int> c1{1};
  SplitMix64 rng(505);
  for (int i = 0; i < 5; ++i) {
    const Circulations circ(random_triple(rng));
    const MultiplierSet m = solve_multiplier_system(equilateral_mu0(), circ, c1, 1.0);
    compare(t, unknowns(m), {circ.total(), 0.0}, 1e-8, "N=3 (c1, c2)");
  }
  for (double g : {-5.0, -2.0, 0.5, 2.0, 5.0}) {
    const Scenario s = with_center(ScenarioKind::TriangleWithCenter, g);
    const MultiplierSet m = solve_multiplier_system(fixed_point(s), s.circ, c1, 1.0);
    const double q = 3.0 * (g + 3.0);
    compare(t, unknowns(m), {g + 1.0, 2.0 * g / q, 2.0 * g / q, -4.0 * g / q, 0.0}, 1e-8,
            "triangle+center gamma = " + format_double(g));
  }
  for (double g : {-1.0, 0.5, 1.0, 2.0, 3.0}) {
    const Scenario s = with_center(ScenarioKind::SquareWithCenter, g);
    const MultiplierSet m = solve_multiplier_system(fixed_point(s), s.circ, c1, 1.0);
    const double b = (3.0 * g + 2.0) / (g + 4.0);
    const double e = (g - 1.0) / (g + 4.0);
    compare(t, unknowns(m), {(2.0 * g + 3.0) / 2.0, b / 4.0, b / 2.0, b / 4.0, -b / 2.0, -e, 0.0, e, -b / 2.0, -e},
            1e-8, "square+center gamma = " + format_double(g));
  }
  return t.result(5, "multiplier reproduction");
}

CriterionResult criterion_minors() {
  Tally t;
  const std::vector<int> c1{1};
  // N = 3, generic circulations with Gamma1 != Gamma2.
  for (const auto& g : std::vector<std::vector<double>>{{1, 2, 3}, {2, 1, 0.5}, {1, 3, -0.5}, {-1, 2, 4}, {0.7, 1.3, 2.1}}) {
    const Circulations circ(g);
    const Scenario s = build_scenario(ScenarioKind::Equilateral3, {std::nullopt, 0, g, {}});
    const MuMatrix mu0 = equilateral_mu0();
    const MultiplierSet m = solve_multiplier_system(mu0, circ, c1, 1.0);
    const Vec d = minors_of(restricted_hessian(mu0, circ, m, *reference_tangent_basis(s)));
    const double g1 = g[0], g2 = g[1], g3 = g[2];
    const double s2 = g1 * g2 + g1 * g3 + g2 * g3;
    compare(t, d,
            {3.0 * g1 * g2 * g3 * (g1 + g2) * (g1 + g3) * (g2 + g3),
             12.0 * g1 * g1 * g2 * g2 * std::pow(g3, 4) * (g1 - g2) * (g1 - g2) * s2},
            1e-6, "N=3 minors");
  }
  for (double g : {-5.0, -2.0, 0.5, 2.0, 5.0}) {
    const Scenario s = with_center(ScenarioKind::TriangleWithCenter, g);
    const MuMatrix mu0 = fixed_point(s);
    for (double a0 : {1.0, -1.0}) {
      const MultiplierSet m = solve_multiplier_system(mu0, s.circ, c1, a0);
      const Vec d = minors_of(restricted_hessian(mu0, s.circ, m, *reference_tangent_basis(s)));
      const double p = 9.0 * g * g + 20.0 * g + 3.0;
      const double q = g + 3.0;
      compare(t, d,
              {a0 * 2.0 * p / (3.0 * q), -16.0 * g * (g - 1.0) / (3.0 * q),
               -a0 * 8.0 * g * (g - 1.0) * p / (3.0 * q * q), 16.0 * std::pow(g - 1.0, 2) * g * g / (q * q)},
              1e-6, "triangle+center gamma = " + format_double(g) + ", a0 = " + format_double(a0));
    }
  }
  for (double g : {-1.0, 0.5, 1.0, 2.0, 3.0}) {
    const Scenario s = with_center(ScenarioKind::SquareWithCenter, g);
    const MuMatrix mu0 = fixed_point(s);
    for (double a0 : {1.0, -1.0}) {
      const MultiplierSet m = solve_multiplier_system(mu0, s.circ, c1, a0);
      const Vec d = minors_of(restricted_hessian(mu0, s.circ, m, *reference_tangent_basis(s)));
      const double p = 4.0 * g * g * g + 63.0 * g * g + 192.0 * g + 66.0;
      const double q = g + 4.0;
      const double r = 2.0 * g + 1.0;
      compare(t, d,
              {a0 * (g + 14.0) / (2.0 * q), p / (2.0 * q * q), a0 * r * p / (q * q),
               -(3.0 * g + 22.0) * r * g * (4.0 * g - 9.0) / (2.0 * q * q),
               a0 * 2.0 * r * g * (4.0 * g - 9.0) * (g - 6.0) / (q * q),
               2.0 * r * g * g * std::pow(4.0 * g - 9.0, 2) / (q * q)},
              1e-6, "square+center gamma = " + format_double(g) + ", a0 = " + format_double(a0));
    }
  }
  return t.result(6, "principal-minor formulas");
}

// ---- 7: verdict regions -------------------------------------------------

CriterionResult criterion_verdict_regions() {
  Tally t;
  struct Region {
    ScenarioKind kind;
    double from, to;
    std::vector<double> boundaries;
    bool (*stable)(double);
    bool (*unstable)(double);
  };
  const std::vector<Region> regions{
      {ScenarioKind::TriangleWithCenter, -6.0, 3.0, {-3.0, 0.0, 1.0},
       [](double g) { return g < -3.0 || (g > 0.0 && g < 1.0); }, [](double g) { return g > 1.0; }},
      {ScenarioKind::SquareWithCenter, -2.0, 4.0, {-0.5, 0.0, 2.25},
       [](double g) { return g > 0.0 && g < 2.25; }, [](double g) { return g < -0.5 || g > 2.25; }},
  };
  const double step = 0.1;
  for (const Region& region : regions) {
    const SweepTable table = gamma_sweep(region.kind, region.from, region.to, step);
    for (const SweepRow& row : table.rows) {
      const bool near = std::any_of(region.boundaries.begin(), region.boundaries.end(),
                                    [&](double b) { return std::abs(row.gamma - b) <= step + 1e-9; });
      if (near) continue;
      const std::string what = std::string(to_string(region.kind)) + " gamma = " + format_double(row.gamma);
      if (region.stable(row.gamma)) {
        t.record(row.verdict == "CertifiedStable" ? 0.0 : 1.0, 0.0, what + " expected CertifiedStable, got " + row.verdict);
      } else if (region.unstable(row.gamma)) {
        t.record(row.verdict == "LinearlyUnstable" ? 0.0 : 1.0, 0.0, what + " expected LinearlyUnstable, got " + row.verdict);
      }
    }
  }
  return t.result(7, "verdict regions");
}

// ---- 8-9: reduction consistency and conservation ------------------------

// Collision-free random configurations; the zero-total ones satisfy I = 0.
std::vector<VortexConfiguration> random_runs() {
  SplitMix64 rng(808);
  std::vector<VortexConfiguration> out;
  const int sizes[] = {3, 4, 5, 3, 4, 5, 3, 4, 5, 4};
  for (int r = 0; r < 10; ++r) {
    const int big_n = sizes[r];
    const bool zero_total = r >= 8;
    for (;;) {
      std::vector<double> g;
      std::vector<Complex> q;
      for (int i = 0; i < big_n; ++i) {
        g.push_back(rng.uniform(0.5, 1.5) * (rng.uniform() < 0.3 ? -1.0 : 1.0));
        q.push_back(std::polar(rng.uniform(0.8, 2.0), rng.uniform(0.0, 2.0 * kPi)));
      }
      if (zero_total) {
        g.back() = 0.0;
        double rest = 0.0;
        for (double x : g) rest += x;
        if (std::abs(rest) < 0.5) continue;
        g.back() = -rest;
        Complex impulse = 0.0;
        for (int i = 0; i + 1 < big_n; ++i) impulse += g[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(i)];
        q.back() = -impulse / g.back();
      } else {
        double total = 0.0;
        for (double x : g) total += x;
        if (std::abs(total) < 0.3) continue;
      }
      double dmin = std::numeric_limits<double>::infinity();
      for (int i = 0; i < big_n; ++i) {
        for (int j = i + 1; j < big_n; ++j) dmin = std::min(dmin, std::abs(q[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(j)]));
      }
      if (dmin < 0.6) continue;
      out.emplace_back(q, Circulations(g));
      break;
    }
  }
  return out;
}

struct RunPair {
  Trajectory full;
  Trajectory reduced;
};

const std::vector<RunPair>& run_pairs() {
  static const std::vector<RunPair> pairs = [] {
    std::vector<RunPair> v;
    for (const VortexConfiguration& cfg : random_runs()) {
      v.push_back({integrate(cfg, 5.0, 1e-3, SystemKind::Full), integrate(cfg, 5.0, 1e-3, SystemKind::Reduced)});
    }
    return v;
  }();
  return pairs;
}

CriterionResult criterion_reduction_consistency() {
  Tally t;
  int r = 0;
  for (const RunPair& p : run_pairs()) {
    const std::string what = "run " + std::to_string(r++) + " (N = " + std::to_string(p.full.circ.count()) + ")";
    if (p.full.aborted || p.reduced.aborted || p.full.states.size() != p.reduced.states.size()) {
      t.fail(what + " aborted: " + p.full.abort_reason + p.reduced.abort_reason);
      continue;
    }
    double gap = 0.0;
    for (std::size_t i = 0; i < p.full.states.size(); ++i) {
      gap = std::max(gap, (p.full.states[i] - p.reduced.states[i]).cwiseAbs().maxCoeff());
    }
    t.record(gap, 1e-6, what);
  }
  return t.result(8, "reduction consistency");
}

CriterionResult criterion_conservation() {
  Tally t;
  int r = 0;
  for (const RunPair& p : run_pairs()) {
    const std::string what = "run " + std::to_string(r++);
    const DriftReport d = invariant_drift_report(p.reduced);
    t.record(d.hamiltonian.max, 1e-8, what + " h");
    for (std::size_t j = 0; j < d.casimirs.size(); ++j) {
      t.record(d.casimirs[j].max, 1e-8, what + " C" + std::to_string(j + 1));
    }
    t.record(d.max_constraint_residual, 1e-8, what + " ||R||_inf");
  }
  return t.result(9, "conservation of h, C_j, R");
}

// ---- 10-11: submersion and derivatives ----------------------------------

CriterionResult criterion_submersion() {
  Tally t;
  SplitMix64 rng(1010);
  for (int n = 2; n <= 5; ++n) {
    for (int i = 0; i < 100; ++i) {
      const MuMatrix mu = MuMatrix::outer(random_z(rng, n));
      const SubmersionCheck c = submersion_rank_check(mu);
      t.record(c.full_rank ? 0.0 : 1.0, 0.0,
               "n = " + std::to_string(n) + " rank " + std::to_string(c.rank));
    }
  }
  return t.result(10, "submersion property");
}

Circulations random_circulations(SplitMix64& rng, int big_n, bool zero_total) {
  for (;;) {
    std::vector<double> g;
    for (int i = 0; i < big_n; ++i) g.push_back(random_circulation(rng));
    double total = 0.0;
    for (double x : g) total += x;
    if (zero_total) {
      total -= g.back();
      if (std::abs(total) < 0.3) continue;
      g.back() = -total;
      return Circulations(g);
    }
    if (std::abs(total) > 0.3) return Circulations(g);
  }
}

MuMatrix random_skew_hermitian(SplitMix64& rng, int n) {
  Vec x(n * n);
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.normal();
  return unflatten(x, n);
}

CriterionResult criterion_derivatives() {
  Tally t;
  SplitMix64 rng(1111);
  for (int i = 0; i < 100; ++i) {
    const int big_n = 3 + i % 3;
    const Circulations circ = random_circulations(rng, big_n, i % 4 == 3);
    const int n = circ.reduced_dim();
    const MuMatrix mu = MuMatrix::outer(random_z(rng, n));
    const MuMatrix nu = random_skew_hermitian(rng, n);
    const MuMatrix g = reduced_gradient(mu, circ);
    const double analytic = pairing(nu, g);
    const Vec x = flatten(mu), v = flatten(nu);
    const double eps = 1e-6 * (1.0 + x.cwiseAbs().maxCoeff());
    const auto h_at = [&](double s) { return reduced_hamiltonian(unflatten(x + s * v, n), circ); };
    // Fourth-order central stencil.
    const double fd = (8.0 * (h_at(eps) - h_at(-eps)) - (h_at(2.0 * eps) - h_at(-2.0 * eps))) / (12.0 * eps);
    t.record(std::abs(analytic - fd) / std::max({std::abs(fd), std::abs(analytic), 1e-3}), 1e-6,
             "reduced_gradient sample " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 4;
    const Vec x = flatten(random_skew_hermitian(rng, n));
    const Mat jac = constraint_jacobian(x, n);
    const double eps = 1e-6 * (1.0 + x.cwiseAbs().maxCoeff());
    Mat fd(jac.rows(), jac.cols());
    for (Eigen::Index s = 0; s < x.size(); ++s) {
      Vec xp = x, xm = x;
      xp[s] += eps;
      xm[s] -= eps;
      fd.col(s) = (constraint_residuals(xp, n) - constraint_residuals(xm, n)) / (2.0 * eps);
    }
    t.record((jac - fd).cwiseAbs().maxCoeff() / std::max(1.0, jac.cwiseAbs().maxCoeff()), 1e-6,
             "constraint_jacobian sample " + std::to_string(i));
  }
  return t.result(11, "derivative checks");
}

}  // namespace

double multiset_distance(std::span<const Complex> got, std::span<const Complex> expected) {
  if (got.size() != expected.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(got.size(), false);
  double worst = 0.0;
  for (const Complex& e : expected) {
    std::size_t best = got.size();
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (!used[i] && std::abs(got[i] - e) < dist) {
        dist = std::abs(got[i] - e);
        best = i;
      }
    }
    used[best] = true;
    worst = std::max(worst, dist);
  }
  return worst;
}

CriterionResult run_criterion(int id) {
  try {
    switch (id) {
      case 1: return criterion_equilateral_spectrum();
      case 2: return criterion_triangle_spectrum();
      case 3: return criterion_square_spectrum();
      case 4: return criterion_zero_total_fixtures();
      case 5: return criterion_multipliers();
      case 6: return criterion_minors();
      case 7: return criterion_verdict_regions();
      case 8: return criterion_reduction_consistency();
      case 9: return criterion_conservation();
      case 10: return criterion_submersion();
      case 11: return criterion_derivatives();
      default: break;
    }
  } catch (const Error& e) {
    return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
  }
  throw Error(ErrorKind::InvalidInput, "no acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_paper_suite() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 11; ++id) out.push_back(run_criterion(id));
  return out;
}

}  // namespace vortex
