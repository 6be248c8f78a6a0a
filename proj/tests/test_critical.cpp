#include <gtest/gtest.h>

#include <cmath>

#include "qcpd/models.hpp"

namespace qcpd {
namespace {

TEST(Delta1, TableValues) {
  EXPECT_EQ(xxz_delta1(12.0), 2.0);
  EXPECT_EQ(xxz_delta1(0.0), -1.0);
  EXPECT_EQ(xxz_delta1(4.0), 0.0);
  EXPECT_EQ(xxz_delta1(8.0, 2.0), 0.0);
}

TEST(Delta2, TableValue) {
  EXPECT_NEAR(xxz_delta2(12.0), 4.875, 1e-3);
}

TEST(Delta2, ZeroFieldLimit) {
  EXPECT_EQ(xxz_delta2(0.0), 1.0);
  // delta2 - 1 vanishes only like 1/ln^2(h).
  double previous = xxz_delta2(1.0);
  for (double h : {1e-3, 1e-8, 1e-30, 1e-60, 1e-100, 1e-200}) {
    const double d = xxz_delta2(h);
    EXPECT_GT(d, 1.0);
    EXPECT_LT(d, previous) << "h = " << h;
    previous = d;
  }
  for (double h : {1e-60, 1e-100, 1e-200}) {
    EXPECT_NEAR(xxz_delta2(h), 1.0, 1e-3) << "h = " << h;
  }
}

TEST(Delta2, RoundTrip) {
  const double h = xxz_delta2_field(1.0);
  EXPECT_NEAR(xxz_delta2(h), std::cosh(1.0), 1e-8);
  for (double eta : {0.05, 0.3, 2.0, 4.0, 7.5}) {
    EXPECT_NEAR(std::acosh(xxz_delta2(xxz_delta2_field(eta))), eta, 1e-8) << "eta = " << eta;
  }
}

TEST(Delta2, SeriesFormsAgree) {
  // Both summations are used on either side of the switch point.
  EXPECT_NEAR(xxz_delta2_field(1.5 - 1e-12), xxz_delta2_field(1.5 + 1e-12), 1e-10);
}

TEST(Delta2, FieldIsIncreasing) {
  double previous = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double h = xxz_delta2_field(0.02 * i);
    EXPECT_GT(h, previous);
    previous = h;
  }
}

TEST(Delta2, Errors) {
  EXPECT_THROW(xxz_delta2(-1.0), std::domain_error);
  EXPECT_THROW(xxz_delta2(std::nan("")), std::domain_error);
}

}  // namespace
}  // namespace qcpd
