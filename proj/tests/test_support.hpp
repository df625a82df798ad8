#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "vortex/algebra.hpp"
#include "vortex/numerics.hpp"

namespace vt {

using namespace vortex;

inline constexpr double kPi = std::numbers::pi;
inline const double kSqrt3 = std::sqrt(3.0);

/// Points in the disk of radius 2 with pairwise distance and modulus >= min_sep.
inline std::vector<Complex> random_points(SplitMix64& rng, int count, double min_sep = 0.3) {
  for (;;) {
    std::vector<Complex> z;
    for (int i = 0; i < count; ++i) z.emplace_back(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    bool ok = true;
    for (int i = 0; i < count && ok; ++i) {
      if (std::abs(z[i]) < min_sep) ok = false;
      for (int j = i + 1; j < count && ok; ++j) ok = std::abs(z[i] - z[j]) >= min_sep;
    }
    if (ok) return z;
  }
}

inline MuMatrix random_rank_one(SplitMix64& rng, int n) { return MuMatrix::outer(random_points(rng, n)); }

inline MuMatrix random_skew(SplitMix64& rng, int n) {
  CMat a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = Complex(0.0, rng.uniform(0.5, 2.0));
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      a(j, i) = -std::conj(a(i, j));
    }
  }
  return MuMatrix(a);
}

/// Circulations with |Gamma_i| in [0.5, 2] and, unless zero_total, |Gamma| >= 0.3.
inline Circulations random_circulations(SplitMix64& rng, int count, bool zero_total = false) {
  for (;;) {
    std::vector<double> g;
    double total = 0.0;
    for (int i = 0; i < count - 1; ++i) {
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      g.push_back(sign * rng.uniform(0.5, 2.0));
      total += g.back();
    }
    if (zero_total) {
      if (std::abs(total) < 0.3) continue;
      g.push_back(-total);
      return Circulations(g);
    }
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    g.push_back(sign * rng.uniform(0.5, 2.0));
    if (std::abs(total + g.back()) >= 0.3) return Circulations(g);
  }
}

inline double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }
inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

inline void append_pm(std::vector<Complex>& out, Complex z, int mult = 1) {
  for (int k = 0; k < mult; ++k) {
    out.push_back(z);
    out.push_back(-z);
  }
}

inline Vec coords(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace vt
