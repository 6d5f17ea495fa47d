#include <gtest/gtest.h>

#include <cmath>

#include "telegraph/perturbation.hpp"

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

const ModelParams kP = validate(2, 1, 1, 1);

}  // namespace

TEST(Laws, RejectBadParameters) {
  EXPECT_EQ(code_of([] { make_poisson(0); }), ErrorCode::NonPositiveRate);
  EXPECT_EQ(code_of([] { make_gamma(1, -1); }), ErrorCode::NonPositiveRate);
  EXPECT_EQ(code_of([] { make_inverse_gaussian(0); }), ErrorCode::NonPositiveRate);
  EXPECT_EQ(to_string(make_poisson(2)), "Poisson(2.000000)");
}

TEST(Psi, Values) {
  EXPECT_EQ(psi(make_poisson(2), 0).value(), 0.0);
  EXPECT_NEAR(psi(make_gamma(2, 3), 1).value(), 2 * std::log(1.5), 1e-15);
  EXPECT_NEAR(psi(make_gamma(2, 3), 1).value(), 0.810930, 1e-6);
  EXPECT_DOUBLE_EQ(psi(make_inverse_gaussian(2), 2).value(), 2);
  EXPECT_TRUE(psi(make_gamma(2, 3), 3).is_infinite());
  EXPECT_TRUE(psi(make_inverse_gaussian(2), 2.01).is_infinite());
}

TEST(Psi, Derivatives) {
  const PsiDerivs p = psi_derivs(make_poisson(2), 0);
  EXPECT_DOUBLE_EQ(p.first, 2);
  EXPECT_DOUBLE_EQ(p.second, 2);
  const PsiDerivs g = psi_derivs(make_gamma(2, 3), 0);
  EXPECT_DOUBLE_EQ(g.first, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(g.second, 2.0 / 9.0);
  const PsiDerivs ig = psi_derivs(make_inverse_gaussian(2), 0);
  EXPECT_DOUBLE_EQ(ig.first, 0.5);
  EXPECT_DOUBLE_EQ(ig.second, 0.125);
  EXPECT_EQ(code_of([] { psi_derivs(make_inverse_gaussian(2), 2); }), ErrorCode::DomainBoundary);
}

TEST(Psi, BehaviourAtMinusInfinity) {
  for (const PerturbationLaw& law : {make_poisson(1.5), make_gamma(2, 3), make_inverse_gaussian(2)}) {
    EXPECT_EQ(psi_prime_at_minus_inf(law), 0.0);
    EXPECT_LT(psi_derivs(law, -1e6).first, 1e-3);
  }
  EXPECT_EQ(*psi_at_minus_inf(make_poisson(1.5)), -1.5);
  EXPECT_FALSE(psi_at_minus_inf(make_gamma(2, 3)).has_value());
  EXPECT_FALSE(psi_at_minus_inf(make_inverse_gaussian(2)).has_value());
}

TEST(Composition, ZeroAtZero) {
  for (const PerturbationLaw& law : {make_poisson(1.5), make_gamma(2, 3), make_inverse_gaussian(2)})
    EXPECT_EQ(lambda_Y(0, law, kP).value(), 0.0);
}

TEST(Composition, DomainCutByPsi) {
  const CompositionDomain cd = composition_domain(make_gamma(2, 0.4), 2, 1);
  EXPECT_NEAR(cd.s0, 0.5 * (3 - std::sqrt(8.04)), 1e-15);
  EXPECT_NEAR(cd.s0, 0.0822553, 1e-7);
  EXPECT_FALSE(cd.closed_at_s0);
  EXPECT_EQ(composition_domain(make_poisson(1), 2, 1).s0, s_max(2, 1));
  EXPECT_TRUE(lambda_Y(0.1, make_poisson(1), kP).is_infinite());
  EXPECT_TRUE(lambda_Y(0.083, make_gamma(2, 0.4), kP).is_infinite());
}

TEST(Composition, ChainRuleMatchesFiniteDifferences) {
  for (const PerturbationLaw& law : {make_poisson(1.5), make_gamma(2, 3), make_inverse_gaussian(2)}) {
    for (double s : {-2.0, 0.0, 0.05}) {
      const PsiDerivs d = lambda_Y_derivs(s, law, kP);
      const double h1 = 1e-6;
      const double gp = lambda_Y(s + h1, law, kP).value(), gm = lambda_Y(s - h1, law, kP).value();
      EXPECT_NEAR(d.first, (gp - gm) / (2 * h1), 1e-6 * (1 + std::abs(d.first)));
      const double h = 1e-4;
      const double f0 = lambda_Y(s, law, kP).value();
      const double fp = lambda_Y(s + h, law, kP).value(), fm = lambda_Y(s - h, law, kP).value();
      EXPECT_NEAR(d.second, (fp - 2 * f0 + fm) / (h * h), 1e-3 * (1 + std::abs(d.second)));
    }
  }
}

TEST(ZHat, Values) {
  EXPECT_DOUBLE_EQ(z_hat(make_poisson(1), kP), 3);
  EXPECT_DOUBLE_EQ(z_hat(make_gamma(2, 3), kP), 2);
  EXPECT_DOUBLE_EQ(z_hat(make_inverse_gaussian(2), kP), 1.5);
}

TEST(LambdaYStar, Values) {
  EXPECT_NEAR(lambda_Y_star(3, make_poisson(1), kP).value(), 0, 1e-10);
  EXPECT_DOUBLE_EQ(lambda_Y_star(0, make_poisson(1), kP).value(), 1);
  EXPECT_TRUE(lambda_Y_star(-0.5, make_poisson(1), kP).is_infinite());
  EXPECT_TRUE(lambda_Y_star(0, make_gamma(2, 3), kP).is_infinite());
  const double v = lambda_Y_star(5, make_poisson(1), kP).value();
  EXPECT_GT(v, 0);
  EXPECT_LE(v, 0.0717968);
}

TEST(LambdaYStar, VanishesOnlyAtZHat) {
  for (const PerturbationLaw& law : {make_poisson(1.5), make_gamma(2, 3), make_inverse_gaussian(2)}) {
    const double zh = z_hat(law, kP);
    EXPECT_NEAR(lambda_Y_star(zh, law, kP).value(), 0, 1e-10);
    EXPECT_GT(lambda_Y_star(zh * 1.3, law, kP).value(), 0);
    EXPECT_GT(lambda_Y_star(zh * 0.7, law, kP).value(), 0);
  }
}

TEST(LambdaYStar, ArgmaxSatisfiesFirstOrderCondition) {
  const PerturbationLaw law = make_gamma(2, 3);
  const YTransform t = lambda_Y_star_report(4.0, law, kP);
  ASSERT_TRUE(t.argmax.has_value());
  EXPECT_NEAR(lambda_Y_derivs(*t.argmax, law, kP).first, 4.0, 1e-8);
  EXPECT_TRUE(t.warnings.empty());
}

TEST(LambdaYStar, NonSteepEndReportsEdgeSupremum) {
  // s_bar = xi^2/2 = 0.045 sits inside (0, (lambda-mu)/2); Psi' is finite there.
  const PerturbationLaw law = make_inverse_gaussian(0.3);
  const YTransform t = lambda_Y_star_report(100.0, law, kP);
  EXPECT_TRUE(t.value.is_finite());
}

TEST(RateComparison, RandomStartIsBelowDeterministicStart) {
  const RateComparison rc = rate_comparison(5, make_poisson(1), kP);
  EXPECT_LT(rc.random_start.value(), rc.deterministic_start.value());
  const RateComparison at = rate_comparison(3, make_poisson(1), kP);
  EXPECT_NEAR(at.random_start.value(), 0, 1e-10);
  EXPECT_NEAR(at.deterministic_start.value(), 0, 1e-12);
  const RateComparison low = rate_comparison(0.5, make_poisson(1), kP);
  EXPECT_TRUE(low.deterministic_start.is_infinite());
  EXPECT_TRUE(low.random_start.is_finite());
}

TEST(RateComparison, CurvatureMatchesFiniteDifference) {
  for (const PerturbationLaw& law : {make_poisson(1.5), make_gamma(2, 3), make_inverse_gaussian(2)}) {
    const RateComparison rc = rate_comparison(z_hat(law, kP), law, kP);
    const double h = 1e-5;
    const double fp = lambda_Y(h, law, kP).value(), fm = lambda_Y(-h, law, kP).value();
    EXPECT_NEAR(1.0 / rc.curvature_random, (fp + fm) / (h * h), 1e-3 * (1.0 / rc.curvature_random));
    EXPECT_LT(rc.curvature_random, rc.curvature_deterministic);
  }
}
