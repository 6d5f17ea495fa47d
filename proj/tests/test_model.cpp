#include <gtest/gtest.h>

#include <cmath>

#include "telegraph/analytic.hpp"
#include "telegraph/model.hpp"

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

TEST(Validate, AcceptsValidParameters) {
  const ModelParams p = validate(2, 1, 1.0, 1);
  EXPECT_EQ(p.lambda(), 2);
  EXPECT_EQ(p.mu(), 1);
  EXPECT_EQ(p.alpha(), 1.0);
  EXPECT_EQ(p.x(), 1);
}

TEST(Validate, RejectsInvalidParameters) {
  EXPECT_EQ(code_of([] { validate(1, 2, 0.5, 1); }), ErrorCode::LambdaNotGreaterThanMu);
  EXPECT_EQ(code_of([] { validate(2, 1, 0.0, 1); }), ErrorCode::AlphaOutOfRange);
  EXPECT_EQ(code_of([] { validate(2, 1, 1.5, 1); }), ErrorCode::AlphaOutOfRange);
  EXPECT_EQ(code_of([] { validate(2, 0, 1, 1); }), ErrorCode::NonPositiveRate);
  EXPECT_EQ(code_of([] { validate(-2, 1, 1, 1); }), ErrorCode::NonPositiveRate);
  EXPECT_EQ(code_of([] { validate(2, 1, 1, -0.1); }), ErrorCode::NegativeStart);
  EXPECT_EQ(code_of([] { validate(2, 2, 1, 1); }), ErrorCode::LambdaNotGreaterThanMu);
  EXPECT_EQ(code_of([] { validate(NAN, 1, 1, 1); }), ErrorCode::NonPositiveRate);
}

TEST(Validate, ErrorMessageCarriesCodeName) {
  try {
    validate(1, 2, 0.5, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.name(), "LambdaNotGreaterThanMu");
    EXPECT_EQ(std::string(e.what()).rfind("LambdaNotGreaterThanMu:", 0), 0u);
  }
}

TEST(Validate, WithXKeepsRates) {
  const ModelParams p = validate(3, 2, 0.9, 0.5).with_x(4);
  EXPECT_EQ(p, validate(3, 2, 0.9, 4));
}

TEST(Scaling2, BuildsLambdaFromBeta) {
  const ModelParams p = Scaling2Params{1.75, 1000, 1}.to_model(0.7);
  EXPECT_DOUBLE_EQ(p.lambda(), 1750);
  EXPECT_EQ(p.mu(), 1000);
  EXPECT_EQ(code_of([] { Scaling2Params{1.0, 10, 1}.to_model(1); }), ErrorCode::LambdaNotGreaterThanMu);
  EXPECT_EQ(code_of([] { Scaling2Params{2.0, 10, 0}.to_model(1); }), ErrorCode::NegativeStart);
}

TEST(Regime, SmoothCase) {
  const RegimeClass rc = classify_regime(validate(2, 1, 1, 1));
  EXPECT_EQ(rc.tag, Regime::Smooth);
  EXPECT_NEAR(rc.s_max, 0.0857864376269049, 1e-15);
  EXPECT_FALSE(rc.s_hat.has_value());
}

TEST(Regime, BoundaryCase) {
  const RegimeClass rc = classify_regime(validate(4, 1, 0.5, 1));
  EXPECT_EQ(rc.tag, Regime::Boundary);
  EXPECT_DOUBLE_EQ(rc.s_max, 0.5);
  ASSERT_TRUE(rc.s_hat.has_value());
  EXPECT_DOUBLE_EQ(*rc.s_hat, 0.5);
}

TEST(Regime, ConstrainedCase) {
  const RegimeClass rc = classify_regime(validate(4, 1, 0.25, 1));
  EXPECT_EQ(rc.tag, Regime::Constrained);
  ASSERT_TRUE(rc.s_hat.has_value());
  EXPECT_NEAR(*rc.s_hat, 1.0 / 3.0, 1e-15);
}

TEST(Regime, BoundaryToleranceIsRelative) {
  const double crit = alpha_critical(9, 4);  // 1/3
  EXPECT_EQ(regime_of(9, 4, crit * (1 + 1e-14)), Regime::Boundary);
  EXPECT_EQ(regime_of(9, 4, crit * (1 + 1e-9)), Regime::Smooth);
  EXPECT_EQ(regime_of(9, 4, crit * (1 - 1e-9)), Regime::Constrained);
}

TEST(Regime, SHatNeverExceedsSMax) {
  for (double a = 0.01; a <= 0.5; a += 0.01) EXPECT_LE(s_hat(4, 1, a), s_max(4, 1) * (1 + 1e-12)) << a;
}

TEST(Regime, NamesAreStable) {
  EXPECT_EQ(to_string(Regime::Smooth), "Smooth");
  EXPECT_EQ(to_string(Regime::Boundary), "Boundary");
  EXPECT_EQ(to_string(Regime::Constrained), "Constrained");
}
