#include <gtest/gtest.h>

#include <algorithm>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qcpd/xstate.hpp"
#include "support/random_states.hpp"

namespace qcpd {
namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;

Matrix4cd pauli_pair(int s) {
  Matrix2cd p;
  switch (s) {
    case 0:
      p << 1, 0, 0, -1;  // z
      break;
    case 1:
      p << 0, 1, 1, 0;  // x
      break;
    default:
      p << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;  // y
      break;
  }
  return Eigen::kroneckerProduct(p, p);
}

TEST(XState, MaximallyMixedFromZeroCorrelators) {
  const XState rho = build_xstate({0, 0, 0, 0});
  EXPECT_DOUBLE_EQ(rho.a(), 0.25);
  EXPECT_DOUBLE_EQ(rho.b(), 0.25);
  EXPECT_DOUBLE_EQ(rho.d(), 0.25);
  EXPECT_DOUBLE_EQ(rho.c(), 0.0);
  EXPECT_DOUBLE_EQ(rho.e(), 0.0);
}

TEST(XState, FullyPolarizedProduct) {
  const XState rho = build_xstate({1, 0, 0, 1});
  EXPECT_DOUBLE_EQ(rho.a(), 1.0);
  EXPECT_DOUBLE_EQ(rho.b(), 0.0);
  EXPECT_DOUBLE_EQ(rho.c(), 0.0);
  EXPECT_DOUBLE_EQ(rho.d(), 0.0);
  EXPECT_DOUBLE_EQ(rho.e(), 0.0);
}

TEST(XState, Singlet) {
  const XState rho = build_xstate({0, -1, -1, -1});
  EXPECT_DOUBLE_EQ(rho.a(), 0.0);
  EXPECT_DOUBLE_EQ(rho.d(), 0.0);
  EXPECT_DOUBLE_EQ(rho.e(), 0.0);
  EXPECT_DOUBLE_EQ(rho.b(), 0.5);
  EXPECT_DOUBLE_EQ(rho.c(), -0.5);
}

TEST(XState, ReducedSingle) {
  auto q = reduced_single(XState::maximally_mixed());
  EXPECT_DOUBLE_EQ(q.p0, 0.5);
  EXPECT_DOUBLE_EQ(q.p1, 0.5);
  q = reduced_single(XState::from_entries(1, 0, 0, 0, 0));
  EXPECT_DOUBLE_EQ(q.p0, 1.0);
  EXPECT_DOUBLE_EQ(q.p1, 0.0);
  q = reduced_single(XState::singlet());
  EXPECT_DOUBLE_EQ(q.p0, 0.5);
  EXPECT_DOUBLE_EQ(q.p1, 0.5);
}

TEST(XState, DenseMatrixOfBellPhiPlus) {
  Eigen::Matrix4d expected;
  expected << 0.5, 0, 0, 0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0.5, 0, 0, 0.5;
  EXPECT_TRUE(dense_matrix(XState::bell_phi_plus()).isApprox(expected, 1e-15));
  EXPECT_TRUE(dense_matrix(XState::maximally_mixed()).isApprox(Eigen::Matrix4d::Identity() / 4));
  const Eigen::Matrix4d s = dense_matrix(XState::singlet());
  EXPECT_DOUBLE_EQ(s(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(s(1, 2), -0.5);
  EXPECT_DOUBLE_EQ(s(2, 1), -0.5);
}

TEST(XState, RejectsUnphysicalCorrelators) {
  // zz = 1 with xx = 1 forces b = 0 < |c|.
  try {
    build_xstate({0, 1, 1, 1});
    FAIL() << "expected PhysicalityError";
  } catch (const PhysicalityError& err) {
    EXPECT_LT(err.offending_value(), -1e-12);
  }
  EXPECT_THROW(XState::from_entries(0.5, 0.5, 0, 0.5, 0), PhysicalityError);  // trace 2
  EXPECT_THROW(XState::from_entries(0.5, 0.25, 0, 0, 0.2), PhysicalityError);  // e^2 > ad
}

TEST(XState, ClampsRoundingViolations) {
  const XState rho = XState::from_entries(0.5, 1e-14, 1.2e-14, 0.5 - 2e-14, 0.5 - 1e-14);
  const auto ev = rho.eigenvalues();
  for (double v : ev) EXPECT_GE(v, 0.0);
  EXPECT_LE(std::abs(rho.c()), rho.b());
  EXPECT_LE(rho.e() * rho.e(), rho.a() * rho.d());
}

TEST(XState, PropertyRoundTripThroughPauliExpectations) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 2000; ++n) {
    const XState rho = testing::random_xstate(rng);
    const Matrix4cd m = dense_matrix(rho).cast<std::complex<double>>();
    Eigen::Matrix2d sz;
    sz << 1, 0, 0, -1;
    const Eigen::Matrix4d z1 = Eigen::kroneckerProduct(Eigen::Matrix2d::Identity(), sz);
    const Correlators c = rho.correlators();
    EXPECT_NEAR((dense_matrix(rho) * z1).trace(), c.z, 1e-12);
    EXPECT_NEAR((m * pauli_pair(1)).trace().real(), c.xx, 1e-12);
    EXPECT_NEAR((m * pauli_pair(2)).trace().real(), c.yy, 1e-12);
    EXPECT_NEAR((m * pauli_pair(0)).trace().real(), c.zz, 1e-12);
    const XState back = build_xstate(c);
    EXPECT_NEAR(back.a(), rho.a(), 1e-12);
    EXPECT_NEAR(back.b(), rho.b(), 1e-12);
    EXPECT_NEAR(back.c(), rho.c(), 1e-12);
    EXPECT_NEAR(back.d(), rho.d(), 1e-12);
    EXPECT_NEAR(back.e(), rho.e(), 1e-12);
  }
}

TEST(XState, PropertyClosedFormSpectrum) {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 2000; ++n) {
    const XState rho = testing::random_xstate(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(dense_matrix(rho));
    auto closed = rho.eigenvalues();
    std::sort(closed.begin(), closed.end());
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(closed[k], es.eigenvalues()(k), 1e-12);
    EXPECT_NEAR(rho.a() + 2 * rho.b() + rho.d(), 1.0, 1e-12);
    EXPECT_GE(closed[0], 0.0);
  }
}

}  // namespace
}  // namespace qcpd
