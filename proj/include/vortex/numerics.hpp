#pragma once

#include <cstdint>
#include <string>

#include "vortex/algebra.hpp"

namespace vortex {

/// Singular values above rel_tol * sigma_max count toward the rank.
inline constexpr double kRankRelTol = 1e-8;

struct RankInfo {
  int rank = 0;
  double sigma_max = 0.0;
  double sigma_min_kept = 0.0;  // smallest singular value counted in the rank
  double sigma_max_dropped = 0.0;
};

RankInfo numerical_rank(const Mat& m, double rel_tol = kRankRelTol);

/// Orthonormal basis of the right nullspace of m (columns), using the same
/// rank threshold as numerical_rank.
Mat null_space(const Mat& m, double rel_tol = kRankRelTol);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

/// Deterministic uniform [0, 1) from a 64-bit generator state (splitmix64),
/// so seeds give identical streams on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t state_;
};

}  // namespace vortex
