#pragma once

#include <vector>

#include "vortex/algebra.hpp"

namespace vortex {

inline constexpr double kCollisionTol = 1e-9;
inline constexpr double kLogFloor = 1e-300;

struct VortexConfiguration {
  /// Throws InvalidInput on a length mismatch. Collisions are checked by
  /// the operations that need a collision-free configuration.
  VortexConfiguration(std::vector<Complex> positions, Circulations circ);

  std::vector<Complex> positions;
  Circulations circ;
};

/// Throws Collision if any pair is within kCollisionTol.
void require_no_collision(std::span<const Complex> positions);

/// H(q) = -(1/4pi) sum_{i<j} Gamma_i Gamma_j ln|q_i - q_j|^2.
double full_hamiltonian(const VortexConfiguration& cfg);

/// The reduced Hamiltonian h (Gamma != 0) or h0 (Gamma = 0) in real
/// coordinates. Every log argument in either form is |sum_j w_j z_j|^2 for a
/// fixed real weight vector w, which is linear in the coordinates:
///   w^T (-i mu) w = sum_j w_j^2 mu_j + 2 sum_{j<k} w_j w_k x_jk.
/// So h = -(1/4pi) sum_t c_t ln(a_t . x) and its derivatives follow directly.
///
/// For Gamma = 0 the vortex N position is eliminated through the linear
/// impulse at I = 0, which is where h0(J(z)) = H(q) holds.
class ReducedHamiltonian {
 public:
  explicit ReducedHamiltonian(const Circulations& circ);

  int dim() const noexcept { return n_; }
  double value(const CoordinateVector& x) const;
  Vec gradient(const CoordinateVector& x) const;
  Mat hessian(const CoordinateVector& x) const;

  struct LogTerm {
    double coefficient;  // c_t, before the -1/4pi prefactor
    Vec direction;       // a_t, so the log argument is a_t . x
  };
  const std::vector<LogTerm>& terms() const noexcept { return terms_; }

 private:
  void add_term(double coefficient, const Vec& weights);
  /// Log arguments a_t . x; throws DomainError below kLogFloor.
  Vec arguments(const CoordinateVector& x) const;

  int n_;
  std::vector<LogTerm> terms_;
};

double reduced_hamiltonian(const MuMatrix& mu, const Circulations& circ);

/// delta h / delta mu: diagonal k is i * 2 dh/dmu_k, off-diagonal (j, k), j < k,
/// is i (dh/dx_jk + i dh/dy_jk). Satisfies <nu, dh/dmu> = d/ds h(mu + s nu).
MuMatrix reduced_gradient(const MuMatrix& mu, const Circulations& circ);

/// Maps a coordinate gradient g to the matrix pattern of reduced_gradient.
MuMatrix gradient_matrix(const Vec& coordinate_gradient, int n);

}  // namespace vortex
