#pragma once

#include <cmath>
#include <variant>

#include "telegraph/error.hpp"
#include "telegraph/ext_real.hpp"
#include "telegraph/model.hpp"

namespace telegraph {

namespace detail {

// (lambda + mu - 2s)^2 - 4 lambda mu, written so that s = 0 gives (lambda - mu)^2
// exactly. Values within 1e-14 (relative) of zero are snapped to zero.
inline double radicand(double s, double lambda, double mu) {
  const double d = lambda - mu;
  const double r = d * d - 4.0 * s * (lambda + mu - s);
  const double scale = d * d + 4.0 * std::abs(s) * (lambda + mu + std::abs(s));
  if (std::abs(r) <= 1e-14 * scale) return 0.0;
  return r;
}

}  // namespace detail

/// Limiting log-MGF 0.5 * (lambda - mu - sqrt((lambda + mu - 2s)^2 - 4 lambda mu)),
/// +inf beyond s_max.
inline ExtReal lambda_fn(double s, double lambda, double mu) {
  if (s > s_max(lambda, mu)) return ExtReal::infinity();
  if (s == 0.0) return 0.0;
  const double r = detail::radicand(s, lambda, mu);
  return 0.5 * (lambda - mu - std::sqrt(std::max(r, 0.0)));
}

struct LambdaDerivs {
  double first;
  double second;
};

inline LambdaDerivs lambda_derivs(double s, double lambda, double mu) {
  if (!(s < s_max(lambda, mu)))
    throw Error(ErrorCode::DomainBoundary, "derivatives of Lambda diverge at s >= s_max");
  const double r = detail::radicand(s, lambda, mu);
  if (!(r > 0.0)) throw Error(ErrorCode::DomainBoundary, "s is numerically at s_max");
  const double root = std::sqrt(r);
  return {(lambda + mu - 2.0 * s) / root, 8.0 * lambda * mu / (r * root)};
}

/// Lambda''(0) = 8 lambda mu / (lambda - mu)^3.
inline double lambda_second_at_zero(double lambda, double mu) {
  const double d = lambda - mu;
  return 8.0 * lambda * mu / (d * d * d);
}

/// Law-of-large-numbers limit (lambda + mu) / (lambda - mu) of A_x / x.
inline double z1(double lambda, double mu) { return (lambda + mu) / (lambda - mu); }

/// Inverse of Lambda on its finite domain; y must not exceed (lambda - mu) / 2.
inline double lambda_inverse(double y, double lambda, double mu) {
  const double top = lambda - mu - 2.0 * y;
  if (top < 0.0) throw Error(ErrorCode::DomainError, "y exceeds the range of Lambda");
  return 0.5 * (lambda + mu - std::sqrt(top * top + 4.0 * lambda * mu));
}

/// Right end of the finiteness domain of the MGF when alpha <= 1 - sqrt(mu/lambda).
inline double s_hat(double lambda, double mu, double alpha) {
  const Regime reg = regime_of(lambda, mu, alpha);
  if (reg == Regime::Smooth)
    throw Error(ErrorCode::RegimeMismatch, "s_hat needs alpha <= 1 - sqrt(mu/lambda)");
  if (reg == Regime::Boundary) return s_max(lambda, mu);
  return alpha * (lambda * (1.0 - alpha) - mu) / (2.0 * (1.0 - alpha));
}

inline RegimeClass classify_regime(const ModelParams& p) {
  RegimeClass rc{regime_of(p.lambda(), p.mu(), p.alpha()), s_max(p.lambda(), p.mu()), {}};
  if (rc.tag != Regime::Smooth) rc.s_hat = s_hat(p.lambda(), p.mu(), p.alpha());
  return rc;
}

/// Lambda'(s_hat): the abscissa beyond which the constrained transform is linear.
inline double z_tilde(double lambda, double mu, double alpha) {
  const Regime reg = regime_of(lambda, mu, alpha);
  if (reg == Regime::Smooth)
    throw Error(ErrorCode::RegimeMismatch, "z_tilde needs alpha < 1 - sqrt(mu/lambda)");
  if (reg == Regime::Boundary)
    throw Error(ErrorCode::BoundaryDivergence, "z_tilde is infinite at alpha = 1 - sqrt(mu/lambda)");
  return lambda_derivs(s_hat(lambda, mu, alpha), lambda, mu).first;
}

/// MGF E[exp(s A_x)] of the absorption time, both alpha regimes.
inline ExtReal mgf_absorption(double s, const ModelParams& p) {
  if (s == 0.0) return 1.0;
  const double lambda = p.lambda(), mu = p.mu(), alpha = p.alpha();
  const Regime reg = regime_of(lambda, mu, alpha);
  const double smax = s_max(lambda, mu);
  switch (reg) {
    case Regime::Smooth:
      if (s > smax) return ExtReal::infinity();
      break;
    case Regime::Boundary:
      if (!(s < smax)) return ExtReal::infinity();
      break;
    case Regime::Constrained:
      if (!(s < s_hat(lambda, mu, alpha))) return ExtReal::infinity();
      break;
  }
  const double root = std::sqrt(std::max(detail::radicand(s, lambda, mu), 0.0));
  const double lam_s = 0.5 * (lambda - mu - root);
  const double denom = 2.0 * lambda * (alpha - 1.0) + lambda + mu - 2.0 * s + root;
  if (!(denom > 0.0)) return ExtReal::infinity();
  return 2.0 * alpha * lambda * std::exp(p.x() * lam_s) / denom;
}

/// Legendre transform sup_s { s z - Lambda(s) }.
inline ExtReal legendre_star(double z, double lambda, double mu) {
  if (z < 1.0) return ExtReal::infinity();
  const double d = std::sqrt((z - 1.0) * lambda) - std::sqrt((z + 1.0) * mu);
  return 0.5 * d * d;
}

/// Legendre transform with the supremum restricted to s <= s_hat.
inline ExtReal legendre_star_constrained(double z, double lambda, double mu, double alpha) {
  const Regime reg = regime_of(lambda, mu, alpha);
  if (reg == Regime::Smooth)
    throw Error(ErrorCode::RegimeMismatch, "constrained transform needs alpha <= 1 - sqrt(mu/lambda)");
  if (z < 1.0) return ExtReal::infinity();
  if (reg == Regime::Boundary || z <= z_tilde(lambda, mu, alpha)) return legendre_star(z, lambda, mu);
  const double sh = s_hat(lambda, mu, alpha);
  return sh * z - lambda_fn(sh, lambda, mu).value();
}

/// Rate function of A_{r x} / x as x -> infinity (speed x).
inline ExtReal rate_scaling1(double z, double r, double lambda, double mu) {
  if (!(r > 0.0)) throw Error(ErrorCode::DomainError, "r must be > 0");
  const ExtReal v = legendre_star(z / r, lambda, mu);
  if (v.is_infinite()) return v;
  return r * v.value();
}

/// Rate function of A_x(beta mu, mu) as mu -> infinity (speed mu).
inline ExtReal rate_scaling2(double z, double x, double beta) {
  if (!(x > 0.0) || !(beta > 1.0)) throw Error(ErrorCode::DomainError, "need x > 0 and beta > 1");
  const ExtReal v = legendre_star(z / x, beta, 1.0);
  if (v.is_infinite()) return v;
  return x * v.value();
}

struct ScalingOne {
  double lambda;
  double mu;
};
struct ScalingTwo {
  double x;
  double beta;
};
using MdScaling = std::variant<ScalingOne, ScalingTwo>;

/// Quadratic moderate-deviation rate z^2 / (2 v) with v the limiting variance.
inline double md_rate(double z, const MdScaling& scaling) {
  struct Visitor {
    double operator()(const ScalingOne& s) const { return lambda_second_at_zero(s.lambda, s.mu); }
    double operator()(const ScalingTwo& s) const { return s.x * lambda_second_at_zero(s.beta, 1.0); }
  };
  const double v = std::visit(Visitor{}, scaling);
  return z * z / (2.0 * v);
}

struct MomentSummary {
  double mean_A;
  double var_A;
  double mean_C;
  double var_C;
};

inline MomentSummary closed_moments(const ModelParams& p) {
  const double l = p.lambda(), m = p.mu(), a = p.alpha(), x = p.x();
  const double d = l - m;
  const double d3 = d * d * d;
  return {
      (2.0 + a * (l + m) * x) / (a * d),
      4.0 * (l + 2.0 * l * m * x * a * a + m * (2.0 * a - 1.0)) / (d3 * a * a),
      (2.0 + (l + m) * x) / d,
      4.0 * (l + m + 2.0 * l * m * x) / d3,
  };
}

/// Part of Var[A_x(beta, 1)] that does not scale with x.
inline double variance_gap_delta(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::AlphaOutOfRange, "alpha in (0,1]");
  if (!(beta > 1.0)) throw Error(ErrorCode::DomainError, "beta must exceed 1");
  const double b1 = beta - 1.0;
  return 4.0 * (beta + 2.0 * alpha - 1.0) / (b1 * b1 * b1 * alpha * alpha);
}

}  // namespace telegraph
