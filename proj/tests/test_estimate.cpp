#include <gtest/gtest.h>

#include <cmath>

#include "telegraph/estimate.hpp"

using namespace telegraph;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::IoError;
}

}  // namespace

TEST(NormalQuantile, Values) {
  EXPECT_EQ(normal_quantile(0.5), 0.0);
  EXPECT_NEAR(normal_quantile(0.975), 1.959964, 5e-7);
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-14);
  EXPECT_NEAR(normal_quantile(1e-10), -6.361340902404056, 1e-10);
}

TEST(NormalQuantile, Antisymmetric) {
  for (double p : {0.001, 0.01, 0.025, 0.1, 0.3, 0.49}) EXPECT_NEAR(normal_quantile(p) + normal_quantile(1 - p), 0, 1e-12);
}

TEST(NormalQuantile, InvertsCdf) {
  for (double p = 0.001; p < 1; p += 0.0137) EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-14);
}

TEST(NormalQuantile, Errors) {
  EXPECT_EQ(code_of([] { normal_quantile(0); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { normal_quantile(1); }), ErrorCode::DomainError);
}

TEST(HalfWidth, Values) {
  EXPECT_NEAR(half_width(1, 1.25, 1000, 0.95), std::sqrt(640.0) * 1.959963984540054 / std::sqrt(1000.0), 1e-14);
  EXPECT_NEAR(half_width(1, 1.25, 1000, 0.95), 1.567971, 1e-6);
  EXPECT_NEAR(half_width(1, 1.25, 20000, 0.95), 0.350608, 2e-6);
  EXPECT_NEAR(half_width(1, 1.25, 4000, 0.95), 0.5 * half_width(1, 1.25, 1000, 0.95), 1e-15);
  EXPECT_EQ(code_of([] { half_width(1, 1, 10, 0.95); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { half_width(1, 2, 10, 1.0); }), ErrorCode::DomainError);
}

TEST(PointEstimate, Values) {
  EXPECT_NEAR(beta_point_estimate(5.15575, 1), 1.481261, 1e-6);
  EXPECT_NEAR(beta_point_estimate(3.291491, 1), 1.872794, 1e-6);
  EXPECT_EQ(code_of([] { beta_point_estimate(1.0, 1); }), ErrorCode::MeanTooSmall);
}

TEST(ConfidenceInterval, TableRows) {
  const BetaEstimate a = beta_confidence_interval(5.15575, 1, 1.25, 1000, 0.95);
  EXPECT_NEAR(a.ci_low, 1.349423, 1e-6);
  EXPECT_NEAR(a.ci_high.value(), 1.772864, 1e-6);
  EXPECT_NEAR(a.point.value(), 1.481261, 1e-6);
  EXPECT_NEAR(a.delta, 1.567971, 1e-6);
  EXPECT_TRUE(a.flags.empty());
  const BetaEstimate b = beta_confidence_interval(3.291491, 1, 1.25, 20000, 0.95);
  EXPECT_NEAR(b.ci_low, 1.756974, 1e-5);
  EXPECT_NEAR(b.ci_high.value(), 2.030459, 1e-5);
}

TEST(ConfidenceInterval, UnboundedUpperEnd) {
  const BetaEstimate e = beta_confidence_interval(2.0, 1, 1.25, 1000, 0.95);
  EXPECT_TRUE(e.ci_high.is_infinite());
  EXPECT_EQ(e.flags, std::vector<std::string>{"upper_endpoint_unbounded"});
  EXPECT_NEAR(e.point.value(), 3, 1e-15);
}

TEST(ConfidenceInterval, MeanBelowStart) {
  const BetaEstimate e = beta_confidence_interval(0.9, 1, 1.25, 1000, 0.95);
  EXPECT_TRUE(e.point.is_infinite());
  EXPECT_TRUE(e.ci_high.is_infinite());
  EXPECT_EQ(e.flags.size(), 2u);
  EXPECT_EQ(code_of([] { beta_confidence_interval(0.5, 1, 1.25, 1e6, 0.95); }), ErrorCode::LowerEndpointUndefined);
}

TEST(ConfidenceInterval, OrderedEndpoints) {
  for (double mean = 3.0; mean < 10; mean += 0.5) {
    const BetaEstimate e = beta_confidence_interval(mean, 1, 1.25, 1000, 0.95);
    EXPECT_LT(e.ci_low, e.point.value());
    EXPECT_LT(e.point.value(), e.ci_high.value());
  }
}

TEST(Coverage, Values) {
  EXPECT_TRUE(coverage_check(5.15575, 1.75, 1, 1.25, 1000, 0.95));
  EXPECT_TRUE(coverage_check(3.0, 2, 1, 1.25, 1000, 0.95));
  const double delta = half_width(1, 1.25, 1000, 0.95);
  EXPECT_FALSE(coverage_check(3.0 + 2 * delta, 2, 1, 1.25, 1000, 0.95));
  EXPECT_EQ(code_of([] { coverage_check(3, 1, 1, 1.25, 1000, 0.95); }), ErrorCode::DomainError);
}
