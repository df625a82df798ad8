#include "vortex/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace vortex {

namespace {

void require_dim(int got, int want) {
  if (got != want) {
    throw Error(ErrorKind::DimensionMismatch,
                "dimension " + std::to_string(got) + " does not match " + std::to_string(want));
  }
}

CMat ik_times(const CouplingMatrix& k, const CMat& m) {
  return Complex(0.0, 1.0) * (k.k().cast<Complex>() * m);
}

// An entry of the Hermitian matrix A = -i mu at (row, col), row <= col,
// optionally conjugated, as a complex linear functional of the coordinates.
struct Factor {
  int re = 0;
  int im = -1;  // -1 on the diagonal
  double sign = 1.0;

  Complex value(const CoordinateVector& x) const {
    return {x[re], im >= 0 ? sign * x[im] : 0.0};
  }
  // d value / d x_k is 1 at re and i*sign at im.
  void add_derivative(std::vector<Complex>& d, Complex scale) const {
    d[static_cast<std::size_t>(re)] += scale;
    if (im >= 0) d[static_cast<std::size_t>(im)] += scale * Complex(0.0, sign);
  }
};

Factor entry(int row, int col, int n, bool conjugate = false) {
  Factor f;
  if (row == col) {
    f.re = row;
  } else {
    f.re = offdiag_slot(row, col, n);
    f.im = f.re + 1;
    f.sign = conjugate ? -1.0 : 1.0;
  }
  return f;
}

enum class Part { Real, Imag };

// value = a*b - c*d, then the chosen part.
struct Component {
  Factor a, b, c, d;
  Part part;
};

std::vector<Component> components(int n) {
  std::vector<Component> out;
  for (int i = 0; i + 1 < n; ++i) {
    out.push_back({entry(i, i, n), entry(i + 1, i + 1, n), entry(i, i + 1, n),
                   entry(i, i + 1, n, true), Part::Real});
  }
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = i + 1; j + 1 < n; ++j) {
      const Component c{entry(i, j, n), entry(i + 1, j + 1, n), entry(i, j + 1, n),
                        entry(i + 1, j, n), Part::Real};
      out.push_back(c);
      Component im = c;
      im.part = Part::Imag;
      out.push_back(im);
    }
  }
  return out;
}

double take(Complex z, Part p) { return p == Part::Real ? z.real() : z.imag(); }

}  // namespace

double casimir(const MuMatrix& mu, const CouplingMatrix& k, int j) {
  require_dim(mu.dim(), k.dim());
  if (j < 1) throw Error(ErrorKind::InvalidInput, "Casimir index must be >= 1");
  const CMat m = ik_times(k, mu.entries());
  CMat p = m;
  for (int e = 1; e < j; ++e) p = (p * m).eval();
  return p.trace().real();
}

Vec casimir_gradient(const CoordinateVector& x, const CouplingMatrix& k, int j) {
  const int n = k.dim();
  if (j < 1) throw Error(ErrorKind::InvalidInput, "Casimir index must be >= 1");
  const CMat m = ik_times(k, unflatten(x, n).entries());
  CMat p = CMat::Identity(n, n);
  for (int e = 1; e < j; ++e) p = (p * m).eval();
  const CMat left = p * ik_times(k, CMat::Identity(n, n));  // M^{j-1} iK
  Vec g(n * n);
  Vec unit = Vec::Zero(n * n);
  for (int s = 0; s < n * n; ++s) {
    unit[s] = 1.0;
    g[s] = j * (left * unflatten(unit, n).entries()).trace().real();
    unit[s] = 0.0;
  }
  return g;
}

Mat casimir_hessian(const CoordinateVector& x, const CouplingMatrix& k, int j) {
  const int n = k.dim();
  const int dim = n * n;
  if (j < 1) throw Error(ErrorKind::InvalidInput, "Casimir index must be >= 1");
  Mat h = Mat::Zero(dim, dim);
  if (j == 1) return h;
  const CMat m = ik_times(k, unflatten(x, n).entries());
  std::vector<CMat> powers{CMat::Identity(n, n)};
  for (int e = 1; e <= j - 2; ++e) powers.push_back(powers.back() * m);
  std::vector<CMat> q;
  Vec unit = Vec::Zero(dim);
  for (int s = 0; s < dim; ++s) {
    unit[s] = 1.0;
    q.push_back(ik_times(k, unflatten(unit, n).entries()));
    unit[s] = 0.0;
  }
  for (int r = 0; r < dim; ++r) {
    for (int c = r; c < dim; ++c) {
      double sum = 0.0;
      for (int a = 0; a <= j - 2; ++a) {
        sum += (powers[static_cast<std::size_t>(a)] * q[static_cast<std::size_t>(c)] *
                powers[static_cast<std::size_t>(j - 2 - a)] * q[static_cast<std::size_t>(r)])
                   .trace()
                   .real();
      }
      h(r, c) = h(c, r) = j * sum;
    }
  }
  return h;
}

double scenario_casimir_c1(const MuMatrix& mu, const Circulations& circ, PrintedCasimir form) {
  const auto unit = [&](std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      if (std::abs(circ[i] - 1.0) > 1e-12) return false;
    }
    return true;
  };
  const auto unsupported = [](const char* what) {
    return Error(ErrorKind::UnsupportedScenario, what);
  };
  const CoordinateVector x = flatten(mu);
  switch (form) {
    case PrintedCasimir::Equilateral3: {
      if (circ.count() != 3 || circ.regime() != Regime::NonZeroTotal || mu.dim() != 2) {
        throw unsupported("printed N=3 C1 needs three vortices with nonzero total circulation");
      }
      const double g1 = circ[0], g2 = circ[1], g3 = circ[2];
      return (g2 * (g1 + g3) * x[0] + g1 * (g2 + g3) * x[1] - 2.0 * g1 * g2 * x[2]) / circ.total();
    }
    case PrintedCasimir::TriangleWithCenterZeroTotal: {
      if (circ.count() != 4 || !unit(3) || std::abs(circ[3] + 3.0) > 1e-12 || mu.dim() != 2) {
        throw unsupported("printed C1 needs circulations (1,1,1,-3)");
      }
      return 2.0 / 3.0 * (x[0] + x[1] - x[2]);
    }
    case PrintedCasimir::TriangleWithCenter: {
      if (circ.count() != 4 || !unit(3) || circ.regime() != Regime::NonZeroTotal || mu.dim() != 3) {
        throw unsupported("printed C1 needs circulations (1,1,1,gamma), gamma != -3");
      }
      const double g = circ[3];
      return ((g + 2.0) * (x[0] + x[1] + x[2]) - 2.0 * (x[3] + x[5] + x[7])) / (g + 3.0);
    }
    case PrintedCasimir::SquareWithCenter: {
      if (circ.count() != 5 || !unit(4) || circ.regime() != Regime::NonZeroTotal || mu.dim() != 4) {
        throw unsupported("printed C1 needs circulations (1,1,1,1,gamma), gamma != -4");
      }
      const double g = circ[4];
      double diag = 0.0, real_parts = 0.0;
      for (int i = 0; i < 4; ++i) diag += x[i];
      for (int s = 4; s < 16; s += 2) real_parts += x[s];
      return ((g + 3.0) * diag - 2.0 * real_parts) / (g + 4.0);
    }
  }
  throw unsupported("unknown printed Casimir");
}

ConstraintVector constraint_residuals(const CoordinateVector& x, int n) {
  if (x.size() != static_cast<Eigen::Index>(n) * n) {
    throw Error(ErrorKind::DimensionMismatch, "coordinate vector length does not match n^2");
  }
  const auto comps = components(n);
  ConstraintVector r(static_cast<Eigen::Index>(comps.size()));
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Component& c = comps[i];
    const Complex v = c.a.value(x) * c.b.value(x) - c.c.value(x) * c.d.value(x);
    r[static_cast<Eigen::Index>(i)] = take(v, c.part);
  }
  return r;
}

ConstraintVector constraint_residuals(const MuMatrix& mu) {
  return constraint_residuals(flatten(mu), mu.dim());
}

Mat constraint_jacobian(const CoordinateVector& x, int n) {
  if (x.size() != static_cast<Eigen::Index>(n) * n) {
    throw Error(ErrorKind::DimensionMismatch, "coordinate vector length does not match n^2");
  }
  const auto comps = components(n);
  Mat jac = Mat::Zero(static_cast<Eigen::Index>(comps.size()), n * n);
  std::vector<Complex> d(static_cast<std::size_t>(n * n));
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Component& c = comps[i];
    std::fill(d.begin(), d.end(), Complex{});
    c.a.add_derivative(d, c.b.value(x));
    c.b.add_derivative(d, c.a.value(x));
    c.c.add_derivative(d, -c.d.value(x));
    c.d.add_derivative(d, -c.c.value(x));
    for (int s = 0; s < n * n; ++s) {
      jac(static_cast<Eigen::Index>(i), s) = take(d[static_cast<std::size_t>(s)], c.part);
    }
  }
  return jac;
}

Mat constraint_jacobian(const MuMatrix& mu) { return constraint_jacobian(flatten(mu), mu.dim()); }

Mat constraint_hessian(const Vec& weights, int n) {
  const auto comps = components(n);
  if (weights.size() != static_cast<Eigen::Index>(comps.size())) {
    throw Error(ErrorKind::DimensionMismatch, "constraint weight vector has the wrong length");
  }
  const int dim = n * n;
  Mat h = Mat::Zero(dim, dim);
  std::vector<Complex> da(static_cast<std::size_t>(dim)), db(static_cast<std::size_t>(dim));
  // d^2 (f g) / dx_k dx_l = f_k g_l + f_l g_k for linear factors f, g.
  auto add_product = [&](const Factor& f, const Factor& g, double w, Part part) {
    std::fill(da.begin(), da.end(), Complex{});
    std::fill(db.begin(), db.end(), Complex{});
    f.add_derivative(da, 1.0);
    g.add_derivative(db, 1.0);
    for (int k = 0; k < dim; ++k) {
      for (int l = 0; l < dim; ++l) {
        const Complex v = da[static_cast<std::size_t>(k)] * db[static_cast<std::size_t>(l)] +
                          da[static_cast<std::size_t>(l)] * db[static_cast<std::size_t>(k)];
        h(k, l) += w * take(v, part);
      }
    }
  };
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const double w = weights[static_cast<Eigen::Index>(i)];
    if (w == 0.0) continue;
    const Component& c = comps[i];
    add_product(c.a, c.b, w, c.part);
    add_product(c.c, c.d, -w, c.part);
  }
  return h;
}

void require_open_set(const MuMatrix& mu) {
  const int n = mu.dim();
  const double scale = std::max(1.0, mu.entries().cwiseAbs().maxCoeff());
  const double tol = 1e-12 * scale;
  for (int i = 0; i < n; ++i) {
    if (std::abs(mu.diagonal(i)) <= tol) {
      throw Error(ErrorKind::NotInOpenSet, "mu_" + std::to_string(i + 1) + " vanishes");
    }
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(mu.offdiagonal(i, j)) <= tol) {
        throw Error(ErrorKind::NotInOpenSet,
                    "mu_" + std::to_string(i + 1) + std::to_string(j + 1) + " vanishes");
      }
    }
  }
}

SubmersionCheck submersion_rank_check(const MuMatrix& mu) {
  require_open_set(mu);
  const int n = mu.dim();
  SubmersionCheck out;
  out.detail = numerical_rank(constraint_jacobian(mu));
  out.rank = out.detail.rank;
  out.expected_rank = constraint_count(n);
  out.nullity = n * n - out.rank;
  out.full_rank = out.rank == out.expected_rank;
  return out;
}

}  // namespace vortex
