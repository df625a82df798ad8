#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vortex/algebra.hpp"
#include "vortex/constraints.hpp"
#include "vortex/numerics.hpp"

namespace vortex {

inline constexpr double kSpecTol = 1e-8;
inline constexpr double kFixedPointTol = 1e-9;
inline constexpr double kMultiplierTol = 1e-8;
/// Eigenvalues closer than this (times max(1, spectral radius)) are merged.
inline constexpr double kEigenClusterTol = 1e-7;

struct FixedPointCheck {
  double residual = 0.0;  // ||X_h(mu0)||_inf
  bool ok = false;
};

FixedPointCheck is_fixed_point(const MuMatrix& mu0, const Circulations& circ);

struct Linearization {
  Mat matrix;
  FixedPointCheck fixed_point;
};

/// D X_h at mu0 in coordinates (analytic). Off a fixed point the matrix is
/// still returned, with fixed_point.ok = false.
Linearization linearize(const MuMatrix& mu0, const Circulations& circ);

/// All eigenvalues of a real square matrix, sorted by (Re, Im). Clusters of
/// eigenvalues within kEigenClusterTol are replaced by their mean, which is
/// well conditioned even for non-semisimple eigenvalues. Throws
/// NoConvergence if the QR iteration fails, InvalidInput if not square.
std::vector<Complex> spectrum(const Mat& a);

double max_real_part(std::span<const Complex> eigenvalues);

struct IndependenceResult {
  bool independent = false;
  int rank = 0;
  int expected_rank = 0;  // K + (n-1)^2
  /// Casimirs in the subset whose differential lies in the span of dR.
  std::vector<int> dependent_on_constraints;
  RankInfo detail;
};

/// Rank of the stacked differentials [dC_j; dR] at mu0. Throws
/// NotInOpenSet, InvalidInput for a Casimir index < 1.
IndependenceResult independence_check(const MuMatrix& mu0, const Circulations& circ,
                                      std::span<const int> casimirs);

struct MultiplierSet {
  double a0 = 1.0;
  double hamiltonian_scale = 1.0;  // f = a0 * scale * h + ...
  std::vector<int> casimir_indices;
  Vec a;  // per Casimir
  Vec b;  // per R_i
  Vec c;  // per off-diagonal pair, Re R_ij
  Vec d;  // per off-diagonal pair, Im R_ij
  double residual = 0.0;  // ||Df(mu0)||_inf, re-evaluated
  int solution_space_dim = 0;

  /// b, c, d interleaved in ConstraintVector order.
  Vec constraint_weights() const;
};

/// Splits constraint weights back into b, c, d.
void set_constraint_weights(MultiplierSet& m, const Vec& weights, int n);

/// Df(mu0) = a0 s Dh + sum a_j DC_j + sum w_r DR_r.
Vec multiplier_gradient(const MuMatrix& mu0, const Circulations& circ, const MultiplierSet& m);

/// Minimal-norm solution of Df(mu0) = 0 for fixed a0. Throws Infeasible
/// when the re-evaluated residual exceeds kMultiplierTol.
MultiplierSet solve_multiplier_system(const MuMatrix& mu0, const Circulations& circ,
                                      std::span<const int> casimirs, double a0,
                                      double hamiltonian_scale = 4.0 * std::numbers::pi);

/// Orthonormal basis (columns) of ker [dC_j; dR] at mu0, of dimension
/// 2n - 1 - K. Throws RankDeficiency otherwise.
Mat tangent_basis(const MuMatrix& mu0, const Circulations& circ, std::span<const int> casimirs);

/// D^2 f(mu0).
Mat multiplier_hessian(const MuMatrix& mu0, const Circulations& circ, const MultiplierSet& m);

/// V^T H V, symmetrized.
Mat restricted_hessian(const Mat& hessian, const Mat& basis);
Mat restricted_hessian(const MuMatrix& mu0, const Circulations& circ, const MultiplierSet& m,
                       const Mat& basis);

struct SylvesterResult {
  bool positive_definite = false;
  std::vector<double> minors;
  double minor_tol = 0.0;  // 1e-10 (1 + ||H||_inf)
  double min_eigenvalue = 0.0;
  /// The minor test and the eigenvalue test agree.
  bool consistent = true;
};

SylvesterResult sylvester_verdict(const Mat& hessian);

enum class Verdict { CertifiedStable, LinearlyUnstable, Inconclusive };
std::string_view to_string(Verdict v);

struct CertificateOptions {
  std::vector<int> casimirs{1};
  double hamiltonian_scale = 4.0 * std::numbers::pi;
  /// Used instead of the SVD nullspace when it is a valid tangent basis.
  std::optional<Mat> preferred_basis;
  std::uint64_t seed = 0x5EED5EEDULL;
  /// Random elements of the multiplier solution set tried when the
  /// minimal-norm solution does not certify.
  int retries = 8;
};

struct CertificateResult {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Complex> spectrum;
  double max_real_part = 0.0;
  double fixed_point_residual = 0.0;
  std::optional<MultiplierSet> multipliers;
  std::optional<Mat> tangent_basis;
  std::optional<Mat> restricted_hessian;
  std::vector<double> minors;
  std::string reason;
  std::string basis_source;  // "preferred" or "nullspace"
  int solution_index = -1;   // 0 = minimal norm, k >= 1 = k-th random retry
  std::uint64_t seed = 0;
};

/// Spectrum, independence, then for a0 = +1 and -1: multipliers, tangent
/// basis, restricted Hessian and Sylvester's criterion. Throws
/// NotAFixedPoint, NotInOpenSet, or InvalidInput when mu0 is not rank one.
CertificateResult energy_casimir_certificate(const MuMatrix& mu0, const Circulations& circ,
                                             const CertificateOptions& options = {});

}  // namespace vortex
