#include "test_support.hpp"

#include "vortex/algebra.hpp"
#include "vortex/error.hpp"

using namespace vt;

namespace {

void expect_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(Circulations, RegimeAndDimension) {
  const Circulations a({1.0, 1.0, 1.0});
  EXPECT_EQ(a.regime(), Regime::NonZeroTotal);
  EXPECT_EQ(a.reduced_dim(), 2);
  EXPECT_DOUBLE_EQ(a.total(), 3.0);
  const Circulations b({1.0, 1.0, 1.0, -3.0});
  EXPECT_EQ(b.regime(), Regime::ZeroTotal);
  EXPECT_EQ(b.reduced_dim(), 2);
  const Circulations c({1.0, 1.0, 1.0, 1.0, 0.5});
  EXPECT_EQ(c.reduced_dim(), 4);
}

TEST(Circulations, RejectsInvalid) {
  expect_kind(ErrorKind::InvalidInput, [] { Circulations({1.0, 1.0}); });
  expect_kind(ErrorKind::InvalidInput, [] { Circulations({1.0, 0.0, 1.0}); });
  expect_kind(ErrorKind::InvalidInput, [] { Circulations({1.0, NAN, 1.0}); });
}

TEST(Coupling, Examples) {
  const Mat want = (Mat(2, 2) << -2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, -2.0 / 3.0).finished();
  EXPECT_LT(max_abs(Mat(build_coupling_matrix(Circulations({1, 1, 1})).k() - want)), 1e-15);
  EXPECT_LT(max_abs(Mat(build_coupling_matrix(Circulations({1, 1, 1, -3})).k() - want)), 1e-15);
  const Mat want3 = (Mat(2, 2) << 0, -1, -1, 2).finished();
  EXPECT_LT(max_abs(Mat(build_coupling_matrix(Circulations({1, -1, 1})).k() - want3)), 1e-15);
}

TEST(Coupling, SymmetricWithInverse) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int big_n = 3 + trial % 3;
    const Circulations circ = random_circulations(rng, big_n + (trial % 2), trial % 2 == 1);
    const CouplingMatrix k = build_coupling_matrix(circ);
    EXPECT_EQ(k.dim(), circ.reduced_dim());
    EXPECT_LT(max_abs(Mat(k.k() - k.k().transpose())), 1e-14);
    const Mat id = Mat::Identity(k.dim(), k.dim());
    EXPECT_LT(max_abs(Mat(k.k() * k.k_inv() - id)), 1e-10);
  }
}

TEST(Flatten, Examples) {
  CMat e(2, 2);
  e << Complex(0, 1), Complex(0, 1) * Complex(0.5, -kSqrt3 / 2), Complex(0, 1) * Complex(0.5, kSqrt3 / 2),
      Complex(0, 1);
  const Vec want = coords({1, 1, 0.5, -kSqrt3 / 2});
  EXPECT_LT(max_abs(Vec(flatten(MuMatrix(e)) - want)), 1e-15);

  const Vec z = flatten(MuMatrix::zero(3));
  EXPECT_EQ(z.size(), 9);
  EXPECT_EQ(max_abs(z), 0.0);

  std::vector<Complex> tri{1.0, std::polar(1.0, 2 * kPi / 3), std::polar(1.0, 4 * kPi / 3)};
  const Vec want3 = coords({1, 1, 1, -0.5, -kSqrt3 / 2, -0.5, kSqrt3 / 2, -0.5, -kSqrt3 / 2});
  EXPECT_LT(max_abs(Vec(flatten(MuMatrix::outer(tri)) - want3)), 1e-15);
}

TEST(Flatten, SlotsAndRoundTrip) {
  EXPECT_EQ(pair_index(0, 1, 4), 0);
  EXPECT_EQ(pair_index(0, 3, 4), 2);
  EXPECT_EQ(pair_index(1, 2, 4), 3);
  EXPECT_EQ(pair_index(2, 3, 4), 5);
  EXPECT_EQ(offdiag_slot(1, 2, 3), 3 + 2 * 2);
  SplitMix64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    Vec v(n * n);
    for (int i = 0; i < v.size(); ++i) v[i] = rng.uniform(-3, 3);
    const MuMatrix mu = unflatten(v, n);
    EXPECT_EQ(skew_hermitian_defect(mu.entries()), 0.0);
    const Vec back = flatten(mu);
    for (int i = 0; i < v.size(); ++i) EXPECT_EQ(back[i], v[i]);
    for (int i = 0; i < n; ++i) EXPECT_EQ(mu.diagonal(i), v[i]);
    if (n >= 2) {
      EXPECT_EQ(mu.offdiagonal(0, 1).real(), v[n]);
      EXPECT_EQ(mu.offdiagonal(0, 1).imag(), v[n + 1]);
    }
  }
  expect_kind(ErrorKind::DimensionMismatch, [] { unflatten(Vec::Zero(5), 2); });
}

TEST(MuMatrix, RejectsNonSkewHermitian) {
  CMat a = CMat::Zero(2, 2);
  a(0, 0) = 1.0;
  expect_kind(ErrorKind::InvalidInput, [&] { MuMatrix m(a); });
  a(0, 0) = Complex(0, 1);
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  expect_kind(ErrorKind::InvalidInput, [&] { MuMatrix m(a); });
}

TEST(Pairing, Examples) {
  const MuMatrix id(CMat::Identity(2, 2) * Complex(0, 1));
  EXPECT_NEAR(pairing(id, id), 1.0, 1e-15);
  EXPECT_EQ(pairing(MuMatrix::zero(2), id), 0.0);
  const MuMatrix mu = unflatten(coords({1, 1, 0.5, -kSqrt3 / 2}), 2);
  EXPECT_NEAR(pairing(mu, mu), 2.0, 1e-14);
}

TEST(Pairing, EqualsHalfTraceAndIsSymmetric) {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 3;
    const MuMatrix a = random_skew(rng, n);
    const MuMatrix b = random_skew(rng, n);
    const Complex tr = 0.5 * (a.entries().adjoint() * b.entries()).trace();
    EXPECT_NEAR(pairing(a, b), tr.real(), 1e-13);
    EXPECT_NEAR(tr.imag(), 0.0, 1e-13);
    EXPECT_NEAR(pairing(a, b), pairing(b, a), 1e-13);
  }
}

TEST(Bracket, AntisymmetryJacobiSkewHermitian) {
  SplitMix64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int big_n = 3 + trial % 4;
    const Circulations circ = random_circulations(rng, big_n, trial % 3 == 0);
    const CouplingMatrix k = build_coupling_matrix(circ);
    const int n = k.dim();
    const MuMatrix a = random_skew(rng, n), b = random_skew(rng, n), c = random_skew(rng, n);
    EXPECT_LT(max_abs(lie_bracket(a, a, k).entries()), 1e-12);
    const CMat ab = lie_bracket(a, b, k).entries();
    EXPECT_LT(max_abs(CMat(ab + lie_bracket(b, a, k).entries())), 1e-12);
    EXPECT_LT(skew_hermitian_defect(ab), 1e-10);
    const CMat jacobi = lie_bracket(a, lie_bracket(b, c, k), k).entries() +
                        lie_bracket(b, lie_bracket(c, a, k), k).entries() +
                        lie_bracket(c, lie_bracket(a, b, k), k).entries();
    const double scale = 1.0 + max_abs(a.entries()) * max_abs(b.entries()) * max_abs(c.entries()) *
                                   std::pow(max_abs(k.k_inv()), 2);
    EXPECT_LT(max_abs(jacobi) / scale, 1e-10);
  }
}
