#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "telegraph/error.hpp"
#include "telegraph/ext_real.hpp"

// Estimation of beta = lambda / mu from a simulated sample mean of
// A_x(beta mu, mu), using the normal approximation for large mu together
// with the worst-case spread over beta > beta0.

namespace telegraph {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Inverse standard normal CDF.
///
/// Acklam's rational approximation (relative error 1.15e-9) followed by one
/// Halley refinement step against erfc, which brings the error to roughly
/// machine precision. Evaluated on the lower half and reflected, so
/// normal_quantile(1 - p) == -normal_quantile(p) whenever 1 - p is exact.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::DomainError, "normal_quantile needs p in (0, 1)");
  if (p > 0.5) return -normal_quantile(1.0 - p);
  if (p == 0.5) return 0.0;

  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

/// Half width delta of the interval for E[A_x(beta mu, mu)] at level `level`,
/// using the largest limiting standard deviation over beta > beta0.
inline double half_width(double x, double beta0, double mu, double level) {
  if (!(x > 0.0) || !(mu > 0.0)) throw Error(ErrorCode::DomainError, "x and mu must be > 0");
  if (!(beta0 > 1.0)) throw Error(ErrorCode::DomainError, "beta0 must exceed 1");
  if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::DomainError, "level must lie in (0, 1)");
  const double b1 = beta0 - 1.0;
  return std::sqrt(8.0 * beta0 * x / (b1 * b1 * b1)) * normal_quantile(0.5 * (1.0 + level)) / std::sqrt(mu);
}

/// Inverts the limit mean x (beta + 1) / (beta - 1).
inline double beta_point_estimate(double mean, double x) {
  if (!(mean > x)) throw Error(ErrorCode::MeanTooSmall, "point estimate needs mean > x");
  return (mean + x) / (mean - x);
}

struct BetaEstimateInputs {
  double mean;
  double x;
  double beta0;
  double mu;
  double level;
};

struct BetaEstimate {
  ExtReal point;
  double ci_low;
  ExtReal ci_high;
  double delta;
  BetaEstimateInputs inputs;
  std::vector<std::string> flags;
};

inline BetaEstimate beta_confidence_interval(double mean, double x, double beta0, double mu, double level) {
  if (!(mean > 0.0)) throw Error(ErrorCode::DomainError, "mean must be > 0");
  const double delta = half_width(x, beta0, mu, level);
  if (!(mean + delta > x))
    throw Error(ErrorCode::LowerEndpointUndefined, "mean + delta must exceed x for a lower endpoint");

  BetaEstimate est{0.0, (mean + delta + x) / (mean + delta - x), 0.0, delta, {mean, x, beta0, mu, level}, {}};
  if (mean > x) {
    est.point = beta_point_estimate(mean, x);
  } else {
    est.point = ExtReal::infinity();
    est.flags.emplace_back("point_estimate_unbounded");
  }
  if (mean - delta > x) {
    est.ci_high = (mean - delta + x) / (mean - delta - x);
  } else {
    est.ci_high = ExtReal::infinity();
    est.flags.emplace_back("upper_endpoint_unbounded");
  }
  return est;
}

/// Whether the simulated mean lies within delta of x (beta* + 1) / (beta* - 1).
inline bool coverage_check(double mean, double beta_star, double x, double beta0, double mu, double level) {
  if (!(beta_star > 1.0)) throw Error(ErrorCode::DomainError, "beta* must exceed 1");
  const double target = x * (beta_star + 1.0) / (beta_star - 1.0);
  const double delta = half_width(x, beta0, mu, level);
  return target - delta < mean && mean < target + delta;
}

}  // namespace telegraph
