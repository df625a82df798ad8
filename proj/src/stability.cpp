#include "vortex/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vortex/dynamics.hpp"

namespace vortex {

namespace {

void require_casimir_indices(std::span<const int> casimirs) {
  for (int j : casimirs) {
    if (j < 1) throw Error(ErrorKind::InvalidInput, "Casimir indices start at 1");
  }
}

// Rows dC_j (in subset order) followed by dR.
Mat stacked_differentials(const CoordinateVector& x, const CouplingMatrix& k,
                          std::span<const int> casimirs) {
  const int n = k.dim();
  const Mat dr = constraint_jacobian(x, n);
  const auto kc = static_cast<Eigen::Index>(casimirs.size());
  Mat g(kc + dr.rows(), n * n);
  for (Eigen::Index i = 0; i < kc; ++i) {
    g.row(i) = casimir_gradient(x, k, casimirs[static_cast<std::size_t>(i)]).transpose();
  }
  g.bottomRows(dr.rows()) = dr;
  return g;
}

void require_rank_one(const MuMatrix& mu) {
  const ConstraintVector r = constraint_residuals(mu);
  const double scale = std::max(1.0, mu.entries().cwiseAbs().maxCoeff());
  if (r.size() > 0 && r.cwiseAbs().maxCoeff() > 1e-9 * scale * scale) {
    throw Error(ErrorKind::InvalidInput, "mu0 is not on the rank-one constraint set");
  }
}

bool annihilates(const Mat& g, const Mat& basis) {
  const double gs = std::max(1.0, g.cwiseAbs().maxCoeff());
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    const double vs = std::max(1.0, basis.col(c).cwiseAbs().maxCoeff());
    if ((g * basis.col(c)).cwiseAbs().maxCoeff() > 1e-10 * gs * vs) return false;
  }
  return true;
}

MultiplierSet from_unknowns(const Vec& u, double a0, double scale, std::span<const int> casimirs,
                            int n) {
  MultiplierSet m;
  m.a0 = a0;
  m.hamiltonian_scale = scale;
  m.casimir_indices.assign(casimirs.begin(), casimirs.end());
  const auto kc = static_cast<Eigen::Index>(casimirs.size());
  m.a = u.head(kc);
  set_constraint_weights(m, u.tail(u.size() - kc), n);
  return m;
}

struct Evidence {
  MultiplierSet multipliers;
  Mat hessian;
  SylvesterResult sylvester;
  int solution_index = 0;
};

}  // namespace

FixedPointCheck is_fixed_point(const MuMatrix& mu0, const Circulations& circ) {
  FixedPointCheck out;
  const Vec f = flatten(lie_poisson_vector_field(mu0, circ));
  out.residual = f.size() > 0 ? f.cwiseAbs().maxCoeff() : 0.0;
  out.ok = out.residual < kFixedPointTol;
  return out;
}

Linearization linearize(const MuMatrix& mu0, const Circulations& circ) {
  const LiePoissonSystem sys(circ);
  if (mu0.dim() != sys.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "mu dimension does not match the circulations");
  }
  return {sys.jacobian(flatten(mu0)), is_fixed_point(mu0, circ)};
}

std::vector<Complex> spectrum(const Mat& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidInput, "spectrum needs a square matrix");
  if (a.size() == 0) return {};
  Eigen::EigenSolver<Mat> es(a, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "eigenvalue iteration did not converge");
  }
  const Eigen::VectorXcd ev = es.eigenvalues();
  const auto m = static_cast<std::size_t>(ev.size());
  std::vector<Complex> raw(ev.data(), ev.data() + ev.size());
  double radius = 0.0;
  for (const Complex& z : raw) radius = std::max(radius, std::abs(z));
  const double tol = kEigenClusterTol * std::max(1.0, radius);

  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (std::abs(raw[i] - raw[j]) < tol) parent[find(i)] = find(j);
    }
  }
  std::vector<Complex> sum(m);
  std::vector<int> count(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    sum[find(i)] += raw[i];
    ++count[find(i)];
  }
  std::vector<Complex> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = find(i);
    out[i] = sum[r] / static_cast<double>(count[r]);
  }
  std::sort(out.begin(), out.end(), [](const Complex& l, const Complex& r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  return out;
}

double max_real_part(std::span<const Complex> eigenvalues) {
  double m = -std::numeric_limits<double>::infinity();
  for (const Complex& z : eigenvalues) m = std::max(m, z.real());
  return eigenvalues.empty() ? 0.0 : m;
}

IndependenceResult independence_check(const MuMatrix& mu0, const Circulations& circ,
                                      std::span<const int> casimirs) {
  require_casimir_indices(casimirs);
  require_open_set(mu0);
  const CouplingMatrix k = build_coupling_matrix(circ);
  const CoordinateVector x = flatten(mu0);
  const Mat g = stacked_differentials(x, k, casimirs);
  IndependenceResult out;
  out.detail = numerical_rank(g);
  out.rank = out.detail.rank;
  out.expected_rank = static_cast<int>(g.rows());
  out.independent = out.rank == out.expected_rank;
  const Mat dr = constraint_jacobian(x, mu0.dim());
  const int base = numerical_rank(dr).rank;
  for (int j : casimirs) {
    Mat with(dr.rows() + 1, dr.cols());
    with.topRows(dr.rows()) = dr;
    with.row(dr.rows()) = casimir_gradient(x, k, j).transpose();
    if (numerical_rank(with).rank == base) out.dependent_on_constraints.push_back(j);
  }
  return out;
}

Vec MultiplierSet::constraint_weights() const {
  const auto nb = b.size();
  Vec w(nb + c.size() + d.size());
  w.head(nb) = b;
  for (Eigen::Index p = 0; p < c.size(); ++p) {
    w[nb + 2 * p] = c[p];
    w[nb + 2 * p + 1] = d[p];
  }
  return w;
}

void set_constraint_weights(MultiplierSet& m, const Vec& weights, int n) {
  if (weights.size() != constraint_count(n)) {
    throw Error(ErrorKind::DimensionMismatch, "constraint weight vector has the wrong length");
  }
  const int nb = n - 1;
  const int pairs = (constraint_count(n) - nb) / 2;
  m.b = weights.head(nb);
  m.c.resize(pairs);
  m.d.resize(pairs);
  for (int p = 0; p < pairs; ++p) {
    m.c[p] = weights[nb + 2 * p];
    m.d[p] = weights[nb + 2 * p + 1];
  }
}

Vec multiplier_gradient(const MuMatrix& mu0, const Circulations& circ, const MultiplierSet& m) {
  const LiePoissonSystem sys(circ);
  const int n = sys.dim();
  if (mu0.dim() != n) throw Error(ErrorKind::DimensionMismatch, "mu dimension does not match");
  const CoordinateVector x = flatten(mu0);
  Vec df = m.a0 * m.hamiltonian_scale * sys.hamiltonian().gradient(x);
  for (std::size_t i = 0; i < m.casimir_indices.size(); ++i) {
    df += m.a[static_cast<Eigen::Index>(i)] * casimir_gradient(x, sys.coupling(), m.casimir_indices[i]);
  }
  df += constraint_jacobian(x, n).transpose() * m.constraint_weights();
  return df;
}

namespace {

struct MultiplierSystem {
  Mat matrix;  // columns: dC_j, then dR_r
  Vec rhs;     // -a0 s Dh
};

MultiplierSystem build_multiplier_system(const MuMatrix& mu0, const LiePoissonSystem& sys,
                                         std::span<const int> casimirs, double a0, double scale) {
  const CoordinateVector x = flatten(mu0);
  return {stacked_differentials(x, sys.coupling(), casimirs).transpose(),
          -a0 * scale * sys.hamiltonian().gradient(x)};
}

}  // namespace

MultiplierSet solve_multiplier_system(const MuMatrix& mu0, const Circulations& circ,
                                      std::span<const int> casimirs, double a0,
                                      double hamiltonian_scale) {
  require_casimir_indices(casimirs);
  if (a0 == 0.0) throw Error(ErrorKind::InvalidInput, "a0 must be nonzero");
  const LiePoissonSystem sys(circ);
  if (mu0.dim() != sys.dim()) throw Error(ErrorKind::DimensionMismatch, "mu dimension does not match");
  const MultiplierSystem s = build_multiplier_system(mu0, sys, casimirs, a0, hamiltonian_scale);
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(s.matrix);
  cod.setThreshold(kRankRelTol);
  const Vec u = cod.solve(s.rhs);
  MultiplierSet m = from_unknowns(u, a0, hamiltonian_scale, casimirs, mu0.dim());
  m.solution_space_dim = static_cast<int>(s.matrix.cols()) - numerical_rank(s.matrix).rank;
  const Vec df = multiplier_gradient(mu0, circ, m);
  m.residual = df.cwiseAbs().maxCoeff();
  if (!(m.residual < kMultiplierTol)) {
    throw Error(ErrorKind::Infeasible,
                "no critical point of this form for a0 = " + format_double(a0) +
                    " (residual " + format_double(m.residual) + ")");
  }
  return m;
}

Mat tangent_basis(const MuMatrix& mu0, const Circulations& circ, std::span<const int> casimirs) {
  require_casimir_indices(casimirs);
  const CouplingMatrix k = build_coupling_matrix(circ);
  if (mu0.dim() != k.dim()) throw Error(ErrorKind::DimensionMismatch, "mu dimension does not match");
  const int n = mu0.dim();
  const Mat g = stacked_differentials(flatten(mu0), k, casimirs);
  const Mat basis = null_space(g);
  const auto expected = static_cast<Eigen::Index>(2 * n - 1) - static_cast<Eigen::Index>(casimirs.size());
  if (basis.cols() != expected) {
    throw Error(ErrorKind::RankDeficiency, "tangent space has dimension " +
                                               std::to_string(basis.cols()) + ", expected " +
                                               std::to_string(expected));
  }
  return basis;
}

Mat multiplier_hessian(const MuMatrix& mu0, const Circulations& circ, const MultiplierSet& m) {
  const LiePoissonSystem sys(circ);
  const int n = sys.dim();
  if (mu0.dim() != n) throw Error(ErrorKind::DimensionMismatch, "mu dimension does not match");
  const CoordinateVector x = flatten(mu0);
  Mat h = m.a0 * m.hamiltonian_scale * sys.hamiltonian().hessian(x);
  for (std::size_t i = 0; i < m.casimir_indices.size(); ++i) {
    h += m.a[static_cast<Eigen::Index>(i)] * casimir_hessian(x, sys.coupling(), m.casimir_indices[i]);
  }
  h += constraint_hessian(m.constraint_weights(), n);
  return h;
}

Mat restricted_hessian(const Mat& hessian, const Mat& basis) {
  if (hessian.rows() != basis.rows() || hessian.cols() != basis.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "basis does not match the Hessian");
  }
  const Mat r = basis.transpose() * hessian * basis;
  return 0.5 * (r + r.transpose());
}

Mat restricted_hessian(const MuMatrix& mu0, const Circulations& circ, const MultiplierSet& m,
                       const Mat& basis) {
  return restricted_hessian(multiplier_hessian(mu0, circ, m), basis);
}

SylvesterResult sylvester_verdict(const Mat& hessian) {
  if (hessian.rows() != hessian.cols()) {
    throw Error(ErrorKind::InvalidInput, "Sylvester's criterion needs a square matrix");
  }
  SylvesterResult out;
  const auto m = hessian.rows();
  const double norm = m > 0 ? hessian.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
  out.minor_tol = 1e-10 * (1.0 + norm);
  bool minors_positive = true;
  for (Eigen::Index k = 1; k <= m; ++k) {
    const double d = hessian.topLeftCorner(k, k).determinant();
    out.minors.push_back(d);
    if (!(d > out.minor_tol)) minors_positive = false;
  }
  if (m == 0) {
    out.positive_definite = false;
    return out;
  }
  const Mat sym = 0.5 * (hessian + hessian.transpose());
  out.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Mat>(sym, Eigen::EigenvaluesOnly).eigenvalues()[0];
  const bool eig_positive = out.min_eigenvalue > 0.0;
  out.consistent = minors_positive == eig_positive;
  out.positive_definite = minors_positive && eig_positive;
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedStable:
      return "CertifiedStable";
    case Verdict::LinearlyUnstable:
      return "LinearlyUnstable";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

CertificateResult energy_casimir_certificate(const MuMatrix& mu0, const Circulations& circ,
                                             const CertificateOptions& options) {
  require_casimir_indices(options.casimirs);
  CertificateResult out;
  out.seed = options.seed;
  const Linearization lin = linearize(mu0, circ);
  out.fixed_point_residual = lin.fixed_point.residual;
  if (!lin.fixed_point.ok) {
    throw Error(ErrorKind::NotAFixedPoint,
                "||X_h(mu0)||_inf = " + format_double(lin.fixed_point.residual));
  }
  require_open_set(mu0);
  require_rank_one(mu0);

  out.spectrum = spectrum(lin.matrix);
  out.max_real_part = max_real_part(out.spectrum);
  if (out.max_real_part > kSpecTol) {
    out.verdict = Verdict::LinearlyUnstable;
    out.reason = "eigenvalue with real part " + format_double(out.max_real_part);
    return out;
  }

  const IndependenceResult ind = independence_check(mu0, circ, options.casimirs);
  if (!ind.independent) {
    out.reason = "differentials of the Casimirs and constraints are dependent (rank " +
                 std::to_string(ind.rank) + " of " + std::to_string(ind.expected_rank) + ")";
    return out;
  }

  const LiePoissonSystem sys(circ);
  const Mat grads = stacked_differentials(flatten(mu0), sys.coupling(), options.casimirs);
  Mat basis = tangent_basis(mu0, circ, options.casimirs);
  out.basis_source = "nullspace";
  if (options.preferred_basis && options.preferred_basis->rows() == basis.rows() &&
      options.preferred_basis->cols() == basis.cols() &&
      numerical_rank(*options.preferred_basis).rank == basis.cols() &&
      annihilates(grads, *options.preferred_basis)) {
    basis = *options.preferred_basis;
    out.basis_source = "preferred";
  }
  out.tangent_basis = basis;

  std::optional<Evidence> fallback;
  std::vector<std::string> failures;
  for (const double a0 : {1.0, -1.0}) {
    MultiplierSet base;
    try {
      base = solve_multiplier_system(mu0, circ, options.casimirs, a0, options.hamiltonian_scale);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Infeasible) throw;
      failures.push_back(e.what());
      continue;
    }
    const MultiplierSystem s = build_multiplier_system(mu0, sys, options.casimirs, a0,
                                                       options.hamiltonian_scale);
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(s.matrix);
    cod.setThreshold(kRankRelTol);
    const Vec u0 = cod.solve(s.rhs);
    const Mat kernel = base.solution_space_dim > 0 ? null_space(s.matrix) : Mat(s.matrix.cols(), 0);
    SplitMix64 rng(options.seed ^ (a0 > 0 ? 0x1ULL : 0x2ULL));
    const int attempts = kernel.cols() > 0 ? 1 + std::max(0, options.retries) : 1;
    for (int attempt = 0; attempt < attempts; ++attempt) {
      MultiplierSet m = base;
      if (attempt > 0) {
        Vec r(kernel.cols());
        for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = rng.normal();
        m = from_unknowns(u0 + kernel * r, a0, options.hamiltonian_scale, options.casimirs,
                          mu0.dim());
        m.solution_space_dim = base.solution_space_dim;
        m.residual = multiplier_gradient(mu0, circ, m).cwiseAbs().maxCoeff();
        if (!(m.residual < kMultiplierTol)) continue;
      }
      const Mat h = restricted_hessian(mu0, circ, m, basis);
      Evidence ev{m, h, sylvester_verdict(h), attempt};
      if (ev.sylvester.positive_definite) {
        out.verdict = Verdict::CertifiedStable;
        out.multipliers = ev.multipliers;
        out.restricted_hessian = ev.hessian;
        out.minors = ev.sylvester.minors;
        out.solution_index = attempt;
        out.reason = "restricted Hessian positive definite with a0 = " + format_double(a0);
        for (const Complex& z : out.spectrum) {
          if (std::abs(z.real()) > kSpecTol) {
            out.verdict = Verdict::Inconclusive;
            out.reason = "certificate contradicts the spectrum";
          }
        }
        return out;
      }
      if (!fallback) fallback = ev;
    }
    failures.push_back("restricted Hessian not positive definite for a0 = " + format_double(a0));
  }
  if (fallback) {
    out.multipliers = fallback->multipliers;
    out.restricted_hessian = fallback->hessian;
    out.minors = fallback->sylvester.minors;
    out.solution_index = fallback->solution_index;
  }
  for (std::size_t i = 0; i < failures.size(); ++i) out.reason += (i ? "; " : "") + failures[i];
  return out;
}

}  // namespace vortex
