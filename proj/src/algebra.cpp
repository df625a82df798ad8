#include "vortex/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vortex {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularCoupling: return "SingularCoupling";
    case ErrorKind::Collision: return "Collision";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotInOpenSet: return "NotInOpenSet";
    case ErrorKind::NotAFixedPoint: return "NotAFixedPoint";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::RankDeficiency: return "RankDeficiency";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::UnsupportedScenario: return "UnsupportedScenario";
    case ErrorKind::ExcludedParameter: return "ExcludedParameter";
    case ErrorKind::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Circulations::Circulations(std::vector<double> gammas) : gammas_(std::move(gammas)) {
  if (gammas_.size() < 3) {
    throw Error(ErrorKind::InvalidInput, "at least three vortices are required");
  }
  double scale = 0.0;
  for (double g : gammas_) {
    if (!std::isfinite(g) || g == 0.0) {
      throw Error(ErrorKind::InvalidInput, "circulations must be finite and nonzero");
    }
    total_ += g;
    scale = std::max(scale, std::abs(g));
  }
  regime_ = std::abs(total_) <= kZeroTotalRelTol * scale ? Regime::ZeroTotal : Regime::NonZeroTotal;
}

int Circulations::reduced_dim() const noexcept {
  const int big_n = static_cast<int>(gammas_.size());
  return regime_ == Regime::NonZeroTotal ? big_n - 1 : big_n - 2;
}

CouplingMatrix build_coupling_matrix(const Circulations& circ) {
  const int n = circ.reduced_dim();
  Mat k(n, n);
  if (circ.regime() == Regime::NonZeroTotal) {
    const double total = circ.total();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        k(i, j) = i == j ? -circ[i] * (total - circ[i]) / total : circ[i] * circ[j] / total;
      }
    }
  } else {
    const double last = circ[circ.count() - 1];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        k(i, j) = -(i == j ? circ[i] * (last + circ[i]) : circ[i] * circ[j]) / last;
      }
    }
  }
  Mat k_inv = k.partialPivLu().inverse();
  const double residual = (k * k_inv - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!std::isfinite(residual) || residual > 1e-10) {
    throw Error(ErrorKind::SingularCoupling,
                "coupling matrix inversion residual " + std::to_string(residual));
  }
  // Symmetrize the inverse; LU leaves rounding-level asymmetry.
  k_inv = 0.5 * (k_inv + k_inv.transpose()).eval();
  return CouplingMatrix(std::move(k), std::move(k_inv));
}

double skew_hermitian_defect(const CMat& m) {
  return (m.adjoint() + m).cwiseAbs().maxCoeff();
}

MuMatrix::MuMatrix(CMat entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "mu must be square");
  }
  const double scale = entries_.size() == 0 ? 0.0 : entries_.cwiseAbs().maxCoeff();
  if (skew_hermitian_defect(entries_) > 1e-12 * std::max(1.0, scale)) {
    throw Error(ErrorKind::InvalidInput, "mu is not skew-Hermitian");
  }
}

MuMatrix MuMatrix::zero(int n) { return MuMatrix(CMat::Zero(n, n), Unchecked{}); }

MuMatrix MuMatrix::outer(std::span<const Complex> z) {
  const int n = static_cast<int>(z.size());
  CMat m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = Complex(0.0, std::norm(z[i]));
    for (int j = i + 1; j < n; ++j) {
      const Complex a = z[i] * std::conj(z[j]);
      m(i, j) = Complex(-a.imag(), a.real());
      m(j, i) = Complex(a.imag(), a.real());
    }
  }
  return MuMatrix(std::move(m), Unchecked{});
}

Complex MuMatrix::offdiagonal(int i, int j) const {
  const Complex e = entries_(i, j);
  return {e.imag(), -e.real()};
}

MuMatrix make_mu_unchecked(CMat entries) { return MuMatrix(std::move(entries), MuMatrix::Unchecked{}); }

CoordinateVector flatten(const MuMatrix& mu) {
  const int n = mu.dim();
  CoordinateVector v(n * n);
  for (int k = 0; k < n; ++k) v[k] = mu.entries()(k, k).imag();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int s = offdiag_slot(i, j, n);
      v[s] = mu.entries()(i, j).imag();
      v[s + 1] = -mu.entries()(i, j).real();
    }
  }
  return v;
}

MuMatrix unflatten(const CoordinateVector& v, int n) {
  if (n < 0 || v.size() != static_cast<Eigen::Index>(n) * n) {
    throw Error(ErrorKind::DimensionMismatch,
                "coordinate vector of length " + std::to_string(v.size()) + " for n = " + std::to_string(n));
  }
  CMat m(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = Complex(0.0, v[k]);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int s = offdiag_slot(i, j, n);
      m(i, j) = Complex(-v[s + 1], v[s]);
      m(j, i) = Complex(v[s + 1], v[s]);
    }
  }
  return MuMatrix(std::move(m), MuMatrix::Unchecked{});
}

namespace {
void require_same_dim(int a, int b) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                "dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}
}  // namespace

double pairing(const MuMatrix& xi, const MuMatrix& eta) {
  require_same_dim(xi.dim(), eta.dim());
  return 0.5 * (xi.entries().adjoint() * eta.entries()).trace().real();
}

MuMatrix lie_bracket(const MuMatrix& xi, const MuMatrix& eta, const CouplingMatrix& k) {
  require_same_dim(xi.dim(), eta.dim());
  require_same_dim(xi.dim(), k.dim());
  const CMat k_inv = k.k_inv().cast<Complex>();
  CMat out = xi.entries() * k_inv * eta.entries() - eta.entries() * k_inv * xi.entries();
  return MuMatrix(std::move(out), MuMatrix::Unchecked{});
}

}  // namespace vortex
