#include "vortex/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace vortex {

namespace {
constexpr double kInvFourPi = 1.0 / (4.0 * std::numbers::pi);

void require_dim(int got, int want) {
  if (got != want) {
    throw Error(ErrorKind::DimensionMismatch,
                "mu has dimension " + std::to_string(got) + ", circulations imply " + std::to_string(want));
  }
}
}  // namespace

VortexConfiguration::VortexConfiguration(std::vector<Complex> positions_in, Circulations circ_in)
    : positions(std::move(positions_in)), circ(std::move(circ_in)) {
  if (positions.size() != circ.count()) {
    throw Error(ErrorKind::InvalidInput, "positions and circulations differ in length");
  }
}

void require_no_collision(std::span<const Complex> positions) {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (!(std::abs(positions[i] - positions[j]) > kCollisionTol)) {
        throw Error(ErrorKind::Collision,
                    "vortices " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " collide");
      }
    }
  }
}

double full_hamiltonian(const VortexConfiguration& cfg) {
  require_no_collision(cfg.positions);
  const auto& q = cfg.positions;
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      sum += cfg.circ[i] * cfg.circ[j] * std::log(std::norm(q[i] - q[j]));
    }
  }
  return -kInvFourPi * sum;
}

ReducedHamiltonian::ReducedHamiltonian(const Circulations& circ) : n_(circ.reduced_dim()) {
  const int big_n = static_cast<int>(circ.count());
  Vec w = Vec::Zero(n_);
  // Pairs among the referenced vortices: |z_i - z_j|^2.
  auto add_pairs = [&] {
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        w.setZero();
        w[i] = 1.0;
        w[j] = -1.0;
        add_term(circ[i] * circ[j], w);
      }
    }
  };
  if (circ.regime() == Regime::NonZeroTotal) {
    // Pairs (i, N): |z_i|^2 = mu_i.
    for (int i = 0; i < n_; ++i) {
      w.setZero();
      w[i] = 1.0;
      add_term(circ[big_n - 1] * circ[i], w);
    }
    add_pairs();
  } else {
    const double g_ref = circ[big_n - 2];
    const double g_last = circ[big_n - 1];
    // Pairs (i, N-1): |z_i|^2.
    for (int i = 0; i < n_; ++i) {
      w.setZero();
      w[i] = 1.0;
      add_term(g_ref * circ[i], w);
    }
    add_pairs();
    // q_N - q_{N-1} = -(1/Gamma_N) sum_j Gamma_j z_j, so
    // q_i - q_N = z_i + (1/Gamma_N) sum_j Gamma_j z_j.
    Vec shift(n_);
    for (int j = 0; j < n_; ++j) shift[j] = circ[j] / g_last;
    for (int i = 0; i < n_; ++i) {
      w = shift;
      w[i] += 1.0;
      add_term(g_last * circ[i], w);
    }
    add_term(g_ref * g_last, shift);
  }
}

void ReducedHamiltonian::add_term(double coefficient, const Vec& weights) {
  Vec a = Vec::Zero(n_ * n_);
  for (int j = 0; j < n_; ++j) a[j] = weights[j] * weights[j];
  for (int j = 0; j < n_; ++j) {
    for (int k = j + 1; k < n_; ++k) a[offdiag_slot(j, k, n_)] = 2.0 * weights[j] * weights[k];
  }
  terms_.push_back({coefficient, std::move(a)});
}

Vec ReducedHamiltonian::arguments(const CoordinateVector& x) const {
  if (x.size() != static_cast<Eigen::Index>(n_) * n_) {
    throw Error(ErrorKind::DimensionMismatch, "coordinate vector length does not match n^2");
  }
  Vec args(static_cast<Eigen::Index>(terms_.size()));
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const double a = terms_[t].direction.dot(x);
    if (!(a > kLogFloor)) {
      throw Error(ErrorKind::DomainError, "log argument " + std::to_string(a) + " is not positive");
    }
    args[static_cast<Eigen::Index>(t)] = a;
  }
  return args;
}

double ReducedHamiltonian::value(const CoordinateVector& x) const {
  const Vec args = arguments(x);
  double sum = 0.0;
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    sum += terms_[t].coefficient * std::log(args[static_cast<Eigen::Index>(t)]);
  }
  return -kInvFourPi * sum;
}

Vec ReducedHamiltonian::gradient(const CoordinateVector& x) const {
  const Vec args = arguments(x);
  Vec g = Vec::Zero(x.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    g += (terms_[t].coefficient / args[static_cast<Eigen::Index>(t)]) * terms_[t].direction;
  }
  return -kInvFourPi * g;
}

Mat ReducedHamiltonian::hessian(const CoordinateVector& x) const {
  const Vec args = arguments(x);
  Mat h = Mat::Zero(x.size(), x.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const double a = args[static_cast<Eigen::Index>(t)];
    h += (terms_[t].coefficient / (a * a)) * terms_[t].direction * terms_[t].direction.transpose();
  }
  return kInvFourPi * h;
}

double reduced_hamiltonian(const MuMatrix& mu, const Circulations& circ) {
  require_dim(mu.dim(), circ.reduced_dim());
  return ReducedHamiltonian(circ).value(flatten(mu));
}

MuMatrix gradient_matrix(const Vec& coordinate_gradient, int n) {
  Vec scaled = coordinate_gradient;
  scaled.head(n) *= 2.0;
  return unflatten(scaled, n);
}

MuMatrix reduced_gradient(const MuMatrix& mu, const Circulations& circ) {
  require_dim(mu.dim(), circ.reduced_dim());
  return gradient_matrix(ReducedHamiltonian(circ).gradient(flatten(mu)), mu.dim());
}

}  // namespace vortex
