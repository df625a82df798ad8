#include "vortex/dynamics.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "vortex/numerics.hpp"

namespace vortex {

namespace {

using CVec = Eigen::VectorXcd;

constexpr double kInvTwoPi = 1.0 / (2.0 * std::numbers::pi);

CVec field_of(const CVec& q, const Circulations& circ) {
  const auto n = q.size();
  CVec out = CVec::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const Complex d = q[i] - q[j];
      const double r2 = std::norm(d);
      if (!(r2 > kCollisionTol * kCollisionTol)) {
        throw Error(ErrorKind::Collision, "vortices " + std::to_string(i + 1) + " and " +
                                              std::to_string(j + 1) + " collide");
      }
      out[i] += circ[static_cast<std::size_t>(j)] * d / r2;
    }
  }
  return Complex(0.0, kInvTwoPi) * out;
}

std::vector<Complex> to_std(const CVec& v) { return {v.data(), v.data() + v.size()}; }

DriftSample sample_at(const CoordinateVector& x, double hamiltonian, const CouplingMatrix& k) {
  const int n = k.dim();
  DriftSample s;
  s.hamiltonian = hamiltonian;
  const MuMatrix mu = unflatten(x, n);
  for (int j = 1; j <= n; ++j) s.casimirs.push_back(casimir(mu, k, j));
  s.residuals = constraint_residuals(x, n);
  s.rmax = s.residuals.size() > 0 ? s.residuals.cwiseAbs().maxCoeff() : 0.0;
  return s;
}

void validate_steps(double t_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidInput, "dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::InvalidInput, "t_end must be positive");
  }
}

// Calls step(t, h) for each RK4 step and record(t) after it; stops early
// (returning the reason) on Collision, DomainError or a non-finite state.
template <typename Step, typename Record>
std::string march(double t_end, double dt, Step step, Record record) {
  const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  for (long long i = 0; i < steps; ++i) {
    const double t0 = static_cast<double>(i) * dt;
    const double t1 = i + 1 == steps ? t_end : static_cast<double>(i + 1) * dt;
    try {
      if (!step(t1 - t0)) return "non-finite state at t = " + format_double(t1);
      record(t1);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Collision || e.kind() == ErrorKind::DomainError) {
        return std::string(e.what()) + " at t = " + format_double(t0);
      }
      throw;
    }
  }
  return {};
}

}  // namespace

std::vector<Complex> full_vector_field(const VortexConfiguration& cfg) {
  const CVec q = Eigen::Map<const CVec>(cfg.positions.data(),
                                        static_cast<Eigen::Index>(cfg.positions.size()));
  return to_std(field_of(q, cfg.circ));
}

RelativeCoordinates relative_coordinates(const VortexConfiguration& cfg) {
  require_no_collision(cfg.positions);
  const int n = cfg.circ.reduced_dim();
  const Complex ref = cfg.positions[static_cast<std::size_t>(n)];
  RelativeCoordinates out;
  for (int i = 0; i < n; ++i) out.z.push_back(cfg.positions[static_cast<std::size_t>(i)] - ref);
  return out;
}

MuMatrix moment_map(const RelativeCoordinates& z) { return MuMatrix::outer(z.z); }

MuMatrix lie_poisson_vector_field(const MuMatrix& mu, const Circulations& circ) {
  const LiePoissonSystem sys(circ);
  if (mu.dim() != sys.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "mu dimension does not match the circulations");
  }
  return unflatten(sys.field(flatten(mu)), mu.dim());
}

LiePoissonSystem::LiePoissonSystem(const Circulations& circ)
    : circ_(circ), k_(build_coupling_matrix(circ)), h_(circ) {}

CMat LiePoissonSystem::apply(const CMat& mu, const CMat& g) const {
  const CMat kinv = k_.k_inv().cast<Complex>();
  return -mu * g * kinv + kinv * g * mu;
}

Vec LiePoissonSystem::field(const CoordinateVector& x) const {
  const int n = dim();
  const MuMatrix mu = unflatten(x, n);
  const MuMatrix g = gradient_matrix(h_.gradient(x), n);
  return flatten(make_mu_unchecked(apply(mu.entries(), g.entries())));
}

Mat LiePoissonSystem::jacobian(const CoordinateVector& x) const {
  const int n = dim();
  const int d = n * n;
  const CMat mu = unflatten(x, n).entries();
  const CMat g = gradient_matrix(h_.gradient(x), n).entries();
  const Mat hess = h_.hessian(x);
  Mat jac(d, d);
  Vec unit = Vec::Zero(d);
  for (int s = 0; s < d; ++s) {
    unit[s] = 1.0;
    const CMat nu = unflatten(unit, n).entries();
    const CMat dg = gradient_matrix(hess.col(s), n).entries();
    jac.col(s) = flatten(make_mu_unchecked(apply(nu, g) + apply(mu, dg)));
    unit[s] = 0.0;
  }
  return jac;
}

Trajectory integrate(const CoordinateVector& initial, const Circulations& circ, double t_end,
                     double dt) {
  validate_steps(t_end, dt);
  const LiePoissonSystem sys(circ);
  const int n = sys.dim();
  if (initial.size() != static_cast<Eigen::Index>(n) * n) {
    throw Error(ErrorKind::DimensionMismatch, "initial state length does not match n^2");
  }
  Trajectory traj(SystemKind::Reduced, circ);
  Vec x = initial;
  auto record = [&](double t) {
    const double h = sys.hamiltonian().value(x);
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.drift.push_back(sample_at(x, h, sys.coupling()));
  };
  record(0.0);
  auto step = [&](double h) {
    const Vec k1 = sys.field(x);
    const Vec k2 = sys.field(x + 0.5 * h * k1);
    const Vec k3 = sys.field(x + 0.5 * h * k2);
    const Vec k4 = sys.field(x + h * k3);
    const Vec next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite()) return false;
    x = next;
    return true;
  };
  traj.abort_reason = march(t_end, dt, step, record);
  traj.aborted = !traj.abort_reason.empty();
  return traj;
}

Trajectory integrate(const VortexConfiguration& initial, double t_end, double dt, SystemKind which) {
  if (which == SystemKind::Reduced) {
    return integrate(flatten(moment_map(relative_coordinates(initial))), initial.circ, t_end, dt);
  }
  validate_steps(t_end, dt);
  require_no_collision(initial.positions);
  const CouplingMatrix k = build_coupling_matrix(initial.circ);
  Trajectory traj(SystemKind::Full, initial.circ);
  VortexConfiguration cfg = initial;
  CVec q = Eigen::Map<const CVec>(cfg.positions.data(), static_cast<Eigen::Index>(cfg.positions.size()));
  auto record = [&](double t) {
    cfg.positions = to_std(q);
    const Vec x = flatten(moment_map(relative_coordinates(cfg)));
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.drift.push_back(sample_at(x, full_hamiltonian(cfg), k));
    traj.positions.push_back(cfg.positions);
  };
  record(0.0);
  auto step = [&](double h) {
    const CVec k1 = field_of(q, cfg.circ);
    const CVec k2 = field_of(q + 0.5 * h * k1, cfg.circ);
    const CVec k3 = field_of(q + 0.5 * h * k2, cfg.circ);
    const CVec k4 = field_of(q + h * k3, cfg.circ);
    const CVec next = q + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite()) return false;
    q = next;
    return true;
  };
  traj.abort_reason = march(t_end, dt, step, record);
  traj.aborted = !traj.abort_reason.empty();
  return traj;
}

DriftReport invariant_drift_report(const Trajectory& traj) {
  if (traj.drift.empty()) throw Error(ErrorKind::EmptyTrajectory, "trajectory has no samples");
  const DriftSample& first = traj.drift.front();
  DriftReport r;
  r.casimirs.resize(first.casimirs.size());
  r.constraints.resize(static_cast<std::size_t>(first.residuals.size()));
  auto update = [](QuantityDrift& q, double d) {
    q.max = std::max(q.max, d);
    q.final = d;
  };
  for (const DriftSample& s : traj.drift) {
    update(r.hamiltonian, std::abs(s.hamiltonian - first.hamiltonian));
    for (std::size_t j = 0; j < r.casimirs.size(); ++j) {
      update(r.casimirs[j], std::abs(s.casimirs[j] - first.casimirs[j]));
    }
    for (std::size_t j = 0; j < r.constraints.size(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      update(r.constraints[j], std::abs(s.residuals[jj] - first.residuals[jj]));
    }
    r.max_constraint_residual = std::max(r.max_constraint_residual, s.rmax);
  }
  return r;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  const int n = traj.circ.reduced_dim();
  out << "t";
  for (int i = 0; i < n * n; ++i) out << ",coord_" << i;
  out << ",H";
  for (int j = 1; j <= n; ++j) out << ",C" << j;
  out << ",Rmax\n";
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    out << format_double(traj.times[r]);
    for (double v : traj.states[r]) out << ',' << format_double(v);
    const DriftSample& s = traj.drift[r];
    out << ',' << format_double(s.hamiltonian);
    for (double c : s.casimirs) out << ',' << format_double(c);
    out << ',' << format_double(s.rmax) << '\n';
  }
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  write_trajectory_csv(traj, file);
  if (!file.flush()) throw Error(ErrorKind::IoError, "failed writing " + path);
}

}  // namespace vortex
