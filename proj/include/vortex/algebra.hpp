#pragma once

// Skew-Hermitian matrices with the K-twisted bracket, the coupling matrices
// K (nonzero total circulation) and K0 (zero total circulation), and the real
// coordinate flattening shared by every other module.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vortex/error.hpp"

namespace vortex {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

/// Real coordinates (mu_1..mu_n, x_12, y_12, x_13, y_13, ..., x_{n-1,n}, y_{n-1,n})
/// with mu_ij = x_ij + i y_ij; off-diagonal pairs in row-major upper-triangular order.
using CoordinateVector = Vec;

enum class Regime { NonZeroTotal, ZeroTotal };

class Circulations {
 public:
  /// Throws InvalidInput unless N >= 3 and every circulation is nonzero.
  explicit Circulations(std::vector<double> gammas);

  std::span<const double> gammas() const noexcept { return gammas_; }
  double operator[](std::size_t i) const { return gammas_[i]; }
  std::size_t count() const noexcept { return gammas_.size(); }
  double total() const noexcept { return total_; }
  Regime regime() const noexcept { return regime_; }
  /// Dimension n of the reduced matrices: N-1 or N-2 by regime.
  int reduced_dim() const noexcept;

  bool operator==(const Circulations& other) const = default;

 private:
  std::vector<double> gammas_;
  double total_ = 0.0;
  Regime regime_ = Regime::NonZeroTotal;
};

/// Totals within this fraction of max|Gamma_i| count as exactly zero.
inline constexpr double kZeroTotalRelTol = 1e-12;

class CouplingMatrix {
 public:
  const Mat& k() const noexcept { return k_; }
  const Mat& k_inv() const noexcept { return k_inv_; }
  int dim() const noexcept { return static_cast<int>(k_.rows()); }

 private:
  friend CouplingMatrix build_coupling_matrix(const Circulations& circ);
  CouplingMatrix(Mat k, Mat k_inv) : k_(std::move(k)), k_inv_(std::move(k_inv)) {}

  Mat k_;
  Mat k_inv_;
};

/// K for Gamma != 0, K0 for Gamma = 0; throws SingularCoupling when the
/// inverse residual exceeds 1e-10.
CouplingMatrix build_coupling_matrix(const Circulations& circ);

/// An n x n skew-Hermitian matrix mu = i * A with A Hermitian.
class MuMatrix {
 public:
  /// Validates skew-Hermitian structure entrywise (1e-12, scaled by the
  /// largest entry); throws InvalidInput otherwise.
  explicit MuMatrix(CMat entries);

  static MuMatrix zero(int n);
  /// Builds i * z z^* without validation (exact by construction).
  static MuMatrix outer(std::span<const Complex> z);

  const CMat& entries() const noexcept { return entries_; }
  int dim() const noexcept { return static_cast<int>(entries_.rows()); }

  /// mu_k, the real diagonal value (0-based k).
  double diagonal(int k) const { return entries_(k, k).imag(); }
  /// mu_ij = x_ij + i y_ij, the (i, j) entry of -i * mu.
  Complex offdiagonal(int i, int j) const;

 private:
  struct Unchecked {};
  MuMatrix(CMat entries, Unchecked) : entries_(std::move(entries)) {}
  friend MuMatrix unflatten(const CoordinateVector& v, int n);
  friend MuMatrix lie_bracket(const MuMatrix&, const MuMatrix&, const CouplingMatrix&);
  friend MuMatrix make_mu_unchecked(CMat entries);

  CMat entries_;
};

/// For results of arithmetic that are skew-Hermitian up to rounding.
MuMatrix make_mu_unchecked(CMat entries);

/// Index of pair (i, j), 0 <= i < j < n, in row-major upper-triangular order.
constexpr int pair_index(int i, int j, int n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}
/// Coordinate slot of x_ij; y_ij follows at +1.
constexpr int offdiag_slot(int i, int j, int n) { return n + 2 * pair_index(i, j, n); }
constexpr int pair_count(int n) { return n * (n - 1) / 2; }

CoordinateVector flatten(const MuMatrix& mu);
/// Throws DimensionMismatch unless v has n^2 entries. Bit-exact inverse of flatten.
MuMatrix unflatten(const CoordinateVector& v, int n);

/// <xi, eta> = 1/2 tr(xi^* eta) (real part; the imaginary part vanishes for
/// skew-Hermitian arguments).
double pairing(const MuMatrix& xi, const MuMatrix& eta);

/// [xi, eta]_K = xi K^-1 eta - eta K^-1 xi.
MuMatrix lie_bracket(const MuMatrix& xi, const MuMatrix& eta, const CouplingMatrix& k);

/// Largest |M^* + M| entry; zero for exactly skew-Hermitian M.
double skew_hermitian_defect(const CMat& m);

}  // namespace vortex
