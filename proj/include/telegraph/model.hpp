#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "telegraph/error.hpp"

namespace telegraph {

// Upward rate lambda, downward rate mu, absorption probability alpha and
// starting position x of one elastic-boundary telegraph motion. Instances
// only come out of validate(), so every ModelParams in circulation satisfies
// lambda > mu > 0, 0 < alpha <= 1, x >= 0.
class ModelParams {
 public:
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double alpha() const { return alpha_; }
  double x() const { return x_; }

  // Same rates and alpha, different start.
  ModelParams with_x(double x) const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  friend ModelParams validate(double lambda, double mu, double alpha, double x);
  ModelParams(double lambda, double mu, double alpha, double x)
      : lambda_(lambda), mu_(mu), alpha_(alpha), x_(x) {}

  double lambda_;
  double mu_;
  double alpha_;
  double x_;
};

inline ModelParams validate(double lambda, double mu, double alpha, double x) {
  if (!std::isfinite(lambda) || !std::isfinite(mu) || !(lambda > 0.0) || !(mu > 0.0))
    throw Error(ErrorCode::NonPositiveRate, "rates must be finite and > 0");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1]");
  if (!(lambda > mu))
    throw Error(ErrorCode::LambdaNotGreaterThanMu, "lambda must exceed mu");
  if (!std::isfinite(x) || !(x >= 0.0))
    throw Error(ErrorCode::NegativeStart, "x must be finite and >= 0");
  return ModelParams(lambda, mu, alpha, x);
}

inline ModelParams ModelParams::with_x(double x) const { return validate(lambda_, mu_, alpha_, x); }

/// Rate ratio beta = lambda / mu of the second scaling, together with mu and x.
struct Scaling2Params {
  double beta;
  double mu;
  double x;

  ModelParams to_model(double alpha) const {
    if (!(beta > 1.0)) throw Error(ErrorCode::LambdaNotGreaterThanMu, "beta must exceed 1");
    if (!(x > 0.0)) throw Error(ErrorCode::NegativeStart, "x must be > 0 under scaling 2");
    return validate(beta * mu, mu, alpha, x);
  }
};

enum class Regime { Smooth, Boundary, Constrained };

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::Smooth: return "Smooth";
    case Regime::Boundary: return "Boundary";
    case Regime::Constrained: return "Constrained";
  }
  return "?";
}

struct RegimeClass {
  Regime tag;
  double s_max;
  std::optional<double> s_hat;  // absent for Smooth
};

/// Right end (sqrt(lambda) - sqrt(mu))^2 / 2 of the finite domain of Lambda.
inline double s_max(double lambda, double mu) {
  const double d = std::sqrt(lambda) - std::sqrt(mu);
  return 0.5 * d * d;
}

/// Critical absorption probability 1 - sqrt(mu/lambda).
inline double alpha_critical(double lambda, double mu) { return 1.0 - std::sqrt(mu / lambda); }

inline constexpr double kBoundaryRelTol = 1e-12;

inline Regime regime_of(double lambda, double mu, double alpha) {
  const double crit = alpha_critical(lambda, mu);
  const double diff = alpha - crit;
  if (std::abs(diff) <= kBoundaryRelTol * std::max(1.0, std::abs(crit))) return Regime::Boundary;
  return diff > 0.0 ? Regime::Smooth : Regime::Constrained;
}

}  // namespace telegraph
