#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vortex/algebra.hpp"
#include "vortex/constraints.hpp"
#include "vortex/hamiltonian.hpp"

namespace vortex {

/// z_i = q_i - q_N (Gamma != 0) or q_i - q_{N-1} (Gamma = 0).
struct RelativeCoordinates {
  std::vector<Complex> z;
};

/// dq_i/dt = (i/2pi) sum_{j != i} Gamma_j (q_i - q_j) / |q_i - q_j|^2.
std::vector<Complex> full_vector_field(const VortexConfiguration& cfg);

/// Throws Collision if two positions coincide.
RelativeCoordinates relative_coordinates(const VortexConfiguration& cfg);

/// mu = i z z^*.
MuMatrix moment_map(const RelativeCoordinates& z);

/// X_h(mu) = -mu G K^-1 + K^-1 G mu with G = dh/dmu.
MuMatrix lie_poisson_vector_field(const MuMatrix& mu, const Circulations& circ);

/// The reduced system in coordinates, with K, h and their derivatives cached.
class LiePoissonSystem {
 public:
  explicit LiePoissonSystem(const Circulations& circ);

  const Circulations& circulations() const noexcept { return circ_; }
  const CouplingMatrix& coupling() const noexcept { return k_; }
  const ReducedHamiltonian& hamiltonian() const noexcept { return h_; }
  int dim() const noexcept { return h_.dim(); }

  Vec field(const CoordinateVector& x) const;
  /// Analytic d field / d x:
  ///   DX[nu] = -nu G K^-1 + K^-1 G nu - mu G' K^-1 + K^-1 G' mu,
  /// where G' is the gradient matrix of (D^2 h) nu.
  Mat jacobian(const CoordinateVector& x) const;

 private:
  CMat apply(const CMat& mu, const CMat& g) const;

  Circulations circ_;
  CouplingMatrix k_;
  ReducedHamiltonian h_;
};

enum class SystemKind { Full, Reduced };

struct DriftSample {
  double hamiltonian = 0.0;
  std::vector<double> casimirs;  // C_1..C_n
  ConstraintVector residuals;
  double rmax = 0.0;  // ||R||_inf
};

struct Trajectory {
  Trajectory(SystemKind kind, Circulations circ) : kind(kind), circ(std::move(circ)) {}

  SystemKind kind;
  Circulations circ;
  std::vector<double> times;
  /// Reduced coordinates at each sample; for Full runs, flatten(J(z(t))).
  std::vector<CoordinateVector> states;
  std::vector<DriftSample> drift;
  /// Full runs only.
  std::vector<std::vector<Complex>> positions;
  bool aborted = false;
  std::string abort_reason;
};

/// Classical RK4 with fixed step dt (the last step is shortened to land on
/// t_end). Collision or DomainError mid-run ends the trajectory early with
/// aborted set. Throws InvalidInput for dt <= 0 or t_end <= 0.
Trajectory integrate(const CoordinateVector& initial, const Circulations& circ, double t_end,
                     double dt);
/// Full integrates the positions; Reduced starts from J(relative_coordinates).
/// Full runs record H(q) as the Hamiltonian, Reduced runs record h(mu).
Trajectory integrate(const VortexConfiguration& initial, double t_end, double dt, SystemKind which);

struct QuantityDrift {
  double max = 0.0;
  double final = 0.0;
};

/// Drifts are |value(t) - value(0)|.
struct DriftReport {
  QuantityDrift hamiltonian;
  std::vector<QuantityDrift> casimirs;
  std::vector<QuantityDrift> constraints;
  double max_constraint_residual = 0.0;  // max_t ||R(t)||_inf
};

/// Throws EmptyTrajectory.
DriftReport invariant_drift_report(const Trajectory& traj);

/// Header t,coord_0..coord_{n^2-1},H,C1..Cn,Rmax; round-trip decimals.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
/// Throws IoError.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace vortex
