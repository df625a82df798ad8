#pragma once

#include "vortex/algebra.hpp"
#include "vortex/numerics.hpp"

namespace vortex {

/// (R_1..R_{n-1}, Re R_12, Im R_12, ..., Re R_{n-2,n-1}, Im R_{n-2,n-1}),
/// length (n-1)^2 where n is the mu dimension.
using ConstraintVector = Vec;

inline constexpr int constraint_count(int n) { return (n - 1) * (n - 1); }

/// C_j(mu) = tr((i K mu)^j), j >= 1. The imaginary part of the trace is
/// rounding only and is discarded.
double casimir(const MuMatrix& mu, const CouplingMatrix& k, int j);
/// Gradient of C_j with respect to the coordinate flattening.
Vec casimir_gradient(const CoordinateVector& x, const CouplingMatrix& k, int j);
/// Hessian of C_j with respect to the coordinates (zero for j = 1).
Mat casimir_hessian(const CoordinateVector& x, const CouplingMatrix& k, int j);

/// The linear C_1 forms printed for specific configurations, kept verbatim.
enum class PrintedCasimir {
  /// N = 3, Gamma != 0: (Gamma_2(Gamma_1+Gamma_3) mu_1 + Gamma_1(Gamma_2+Gamma_3) mu_2
  /// - 2 Gamma_1 Gamma_2 mu_3) / Gamma. Note the index pattern: this is not
  /// tr(i K mu) unless Gamma_1 = Gamma_2, and is not conserved otherwise.
  Equilateral3,
  /// N = 4, Gamma = (1,1,1,-3): (2/3)(mu_1 + mu_2 - mu_3).
  TriangleWithCenterZeroTotal,
  /// N = 4, Gamma = (1,1,1,gamma): ((gamma+2)(mu_1+mu_2+mu_3) - 2(mu_4+mu_6+mu_8)) / (gamma+3).
  TriangleWithCenter,
  /// N = 5, Gamma = (1,1,1,1,gamma): ((gamma+3) sum mu_i - 2 sum_j mu_{2j+3}) / (gamma+4).
  SquareWithCenter,
};

/// Throws UnsupportedScenario if the circulations or the dimension do not
/// match the printed form.
double scenario_casimir_c1(const MuMatrix& mu, const Circulations& circ, PrintedCasimir form);

ConstraintVector constraint_residuals(const MuMatrix& mu);
ConstraintVector constraint_residuals(const CoordinateVector& x, int n);

/// d R / d x, shape (n-1)^2 x n^2. Every component is quadratic, so the
/// entries are exact bilinear expressions.
Mat constraint_jacobian(const MuMatrix& mu);
Mat constraint_jacobian(const CoordinateVector& x, int n);

/// sum_r weights_r * D^2 R_r (constant in mu).
Mat constraint_hessian(const Vec& weights, int n);

/// Throws NotInOpenSet if some mu_i or mu_ij vanishes (within 1e-12 of the
/// matrix scale).
void require_open_set(const MuMatrix& mu);

struct SubmersionCheck {
  int rank = 0;
  int expected_rank = 0;
  int nullity = 0;
  bool full_rank = false;
  RankInfo detail;
};

SubmersionCheck submersion_rank_check(const MuMatrix& mu);

}  // namespace vortex
