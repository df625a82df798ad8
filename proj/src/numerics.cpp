#include "vortex/numerics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

namespace vortex {

RankInfo numerical_rank(const Mat& m, double rel_tol) {
  RankInfo info;
  if (m.size() == 0) return info;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  info.sigma_max = s.size() > 0 ? s[0] : 0.0;
  const double cut = rel_tol * info.sigma_max;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > cut && s[i] > 0.0) {
      ++info.rank;
      info.sigma_min_kept = s[i];
    } else {
      info.sigma_max_dropped = std::max(info.sigma_max_dropped, s[i]);
    }
  }
  return info;
}

Mat null_space(const Mat& m, double rel_tol) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return Mat::Identity(cols, cols);
  // Pad to square so the full V is available even for wide matrices.
  Mat padded = Mat::Zero(std::max(m.rows(), cols), cols);
  padded.topRows(m.rows()) = m;
  Eigen::JacobiSVD<Mat> svd(padded, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double cut = rel_tol * (s.size() > 0 ? s[0] : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > cut && s[rank] > 0.0) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace vortex
