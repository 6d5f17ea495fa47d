#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "telegraph/analytic.hpp"
#include "telegraph/error.hpp"
#include "telegraph/ext_real.hpp"
#include "telegraph/model.hpp"

// Random initial point Y(x) driven by a subordinator whose one-time marginal
// is Poisson, Gamma or Inverse Gaussian. Psi is log E[exp(s Y(1))].

namespace telegraph {

struct PoissonLaw {
  double rate;
};
// Shape gamma and rate theta; Psi(s) = gamma log(theta / (theta - s)).
struct GammaLaw {
  double shape;
  double rate;
};
struct InverseGaussianLaw {
  double xi;
};

using PerturbationLaw = std::variant<PoissonLaw, GammaLaw, InverseGaussianLaw>;

inline PerturbationLaw make_poisson(double rate) {
  if (!(rate > 0.0)) throw Error(ErrorCode::NonPositiveRate, "Poisson rate must be > 0");
  return PoissonLaw{rate};
}
inline PerturbationLaw make_gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) throw Error(ErrorCode::NonPositiveRate, "Gamma parameters must be > 0");
  return GammaLaw{shape, rate};
}
inline PerturbationLaw make_inverse_gaussian(double xi) {
  if (!(xi > 0.0)) throw Error(ErrorCode::NonPositiveRate, "Inverse Gaussian xi must be > 0");
  return InverseGaussianLaw{xi};
}

inline std::string to_string(const PerturbationLaw& law) {
  struct V {
    std::string operator()(const PoissonLaw& l) const { return "Poisson(" + std::to_string(l.rate) + ")"; }
    std::string operator()(const GammaLaw& l) const {
      return "Gamma(" + std::to_string(l.shape) + "," + std::to_string(l.rate) + ")";
    }
    std::string operator()(const InverseGaussianLaw& l) const {
      return "InverseGaussian(" + std::to_string(l.xi) + ")";
    }
  };
  return std::visit(V{}, law);
}

/// Upper end of the domain of Psi; absent when the domain is the whole line.
struct PsiDomain {
  std::optional<double> s_bar;
  bool closed = false;
};

inline PsiDomain psi_domain(const PerturbationLaw& law) {
  struct V {
    PsiDomain operator()(const PoissonLaw&) const { return {}; }
    PsiDomain operator()(const GammaLaw& l) const { return {l.rate, false}; }
    PsiDomain operator()(const InverseGaussianLaw& l) const { return {0.5 * l.xi * l.xi, true}; }
  };
  return std::visit(V{}, law);
}

inline ExtReal psi(const PerturbationLaw& law, double s) {
  struct V {
    double s;
    ExtReal operator()(const PoissonLaw& l) const { return l.rate * std::expm1(s); }
    ExtReal operator()(const GammaLaw& l) const {
      if (!(s < l.rate)) return ExtReal::infinity();
      return -l.shape * std::log1p(-s / l.rate);
    }
    ExtReal operator()(const InverseGaussianLaw& l) const {
      const double r = l.xi * l.xi - 2.0 * s;
      if (r < 0.0) return ExtReal::infinity();
      return l.xi - std::sqrt(r);
    }
  };
  return std::visit(V{s}, law);
}

struct PsiDerivs {
  double first;
  double second;
};

inline PsiDerivs psi_derivs(const PerturbationLaw& law, double s) {
  const PsiDomain dom = psi_domain(law);
  if (dom.s_bar && !(s < *dom.s_bar))
    throw Error(ErrorCode::DomainBoundary, "Psi derivatives need s inside the open domain");
  struct V {
    double s;
    PsiDerivs operator()(const PoissonLaw& l) const {
      const double e = l.rate * std::exp(s);
      return {e, e};
    }
    PsiDerivs operator()(const GammaLaw& l) const {
      const double g = 1.0 / (l.rate - s);
      return {l.shape * g, l.shape * g * g};
    }
    PsiDerivs operator()(const InverseGaussianLaw& l) const {
      const double r = 1.0 / std::sqrt(l.xi * l.xi - 2.0 * s);
      return {r, r * r * r};
    }
  };
  return std::visit(V{s}, law);
}

/// Psi'(-inf); zero for all three laws.
inline double psi_prime_at_minus_inf(const PerturbationLaw&) { return 0.0; }

/// Psi(-inf): -rate for Poisson, -inf (absent) for Gamma and Inverse Gaussian.
inline std::optional<double> psi_at_minus_inf(const PerturbationLaw& law) {
  if (const auto* p = std::get_if<PoissonLaw>(&law)) return -p->rate;
  return std::nullopt;
}

/// Whether Psi' blows up at the upper end of its domain.
inline bool psi_steep_at_upper(const PerturbationLaw& law) {
  return !std::holds_alternative<PoissonLaw>(law);
}

struct CompositionDomain {
  double s0;
  bool closed_at_s0;
};

/// Right end of the finiteness domain of Lambda_Y = Psi(Lambda(.)).
inline CompositionDomain composition_domain(const PerturbationLaw& law, double lambda, double mu) {
  const double smax = s_max(lambda, mu);
  const PsiDomain dom = psi_domain(law);
  if (!dom.s_bar) return {smax, true};
  const double top = 0.5 * (lambda - mu);  // Lambda(s_max)
  if (*dom.s_bar > top) return {smax, true};
  if (*dom.s_bar == top) return {smax, dom.closed};
  return {lambda_inverse(*dom.s_bar, lambda, mu), dom.closed};
}

inline ExtReal lambda_Y(double s, const PerturbationLaw& law, const ModelParams& p) {
  const ExtReal inner = lambda_fn(s, p.lambda(), p.mu());
  if (inner.is_infinite()) return inner;
  return psi(law, inner.value());
}

/// First and second derivatives of Lambda_Y by the chain rule.
inline PsiDerivs lambda_Y_derivs(double s, const PerturbationLaw& law, const ModelParams& p) {
  const LambdaDerivs ld = lambda_derivs(s, p.lambda(), p.mu());
  const PsiDerivs pd = psi_derivs(law, lambda_fn(s, p.lambda(), p.mu()).value());
  return {pd.first * ld.first, pd.second * ld.first * ld.first + pd.first * ld.second};
}

/// Steepness of Lambda_Y at the end of its domain, in the two cases that can occur.
inline bool essentially_smooth(const PerturbationLaw& law, double lambda, double mu) {
  const CompositionDomain cd = composition_domain(law, lambda, mu);
  if (cd.s0 == s_max(lambda, mu)) return true;  // Lambda' diverges there
  return psi_steep_at_upper(law);
}

/// Limit point Psi'(0) Lambda'(0) where Lambda_Y* vanishes.
inline double z_hat(const PerturbationLaw& law, const ModelParams& p) {
  return psi_derivs(law, 0.0).first * z1(p.lambda(), p.mu());
}

struct YTransform {
  ExtReal value;
  std::optional<double> argmax;  // maximising s, when attained
  std::vector<std::string> warnings;
};

/// Numeric Legendre transform of Lambda_Y: bisection on Lambda_Y'(s) = z.
inline YTransform lambda_Y_star_report(double z, const PerturbationLaw& law, const ModelParams& p) {
  YTransform out{0.0, std::nullopt, {}};
  if (!essentially_smooth(law, p.lambda(), p.mu()))
    out.warnings.emplace_back("Lambda_Y is not essentially smooth; the lower bound may not hold");

  const double z_low = psi_prime_at_minus_inf(law);  // times Lambda'(-inf) = 1
  if (z < z_low) {
    out.value = ExtReal::infinity();
    return out;
  }
  if (z == z_low) {
    // lim_{s -> -inf} s z - Lambda_Y(s) = -Psi(-inf)
    const auto floor = psi_at_minus_inf(law);
    out.value = floor ? ExtReal(-*floor) : ExtReal::infinity();
    return out;
  }

  const CompositionDomain cd = composition_domain(law, p.lambda(), p.mu());
  const double tol = 1e-12 * (1.0 + std::abs(z));
  // Derivative, treating the numerical edge of the domain as +inf.
  auto deriv = [&](double s) {
    if (!(s < cd.s0)) return std::numeric_limits<double>::infinity();
    try {
      return lambda_Y_derivs(s, law, p).first;
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  double lo = std::min(-1.0, cd.s0 - 1.0);
  int grow = 0;
  while (!(deriv(lo) < z)) {
    lo = 2.0 * lo - 1.0;
    if (++grow > 1100 || !std::isfinite(lo))
      throw Error(ErrorCode::NoBracket, "could not find s with Lambda_Y'(s) < z");
  }
  double hi = cd.s0;
  double s = lo;
  for (int it = 0; it < 4000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    s = mid;
    const double d = deriv(mid);
    if (std::abs(d - z) < tol) break;
    (d < z ? lo : hi) = mid;
  }
  // Non-steep closed end with Lambda_Y'(s0) < z: the supremum sits at s0.
  if (cd.closed_at_s0 && hi == cd.s0 && deriv(std::nextafter(cd.s0, -std::numeric_limits<double>::infinity())) < z) {
    s = cd.s0;
    out.warnings.emplace_back("supremum attained at the domain edge s0");
  }
  const ExtReal ly = lambda_Y(s, law, p);
  if (ly.is_infinite()) throw Error(ErrorCode::NoBracket, "root landed outside the domain of Lambda_Y");
  out.value = std::max(0.0, s * z - ly.value());
  out.argmax = s;
  return out;
}

inline ExtReal lambda_Y_star(double z, const PerturbationLaw& law, const ModelParams& p) {
  return lambda_Y_star_report(z, law, p).value;
}

struct RateComparison {
  ExtReal random_start;         // Lambda_Y*(z)
  ExtReal deterministic_start;  // I_1(z; Psi'(0))
  double curvature_random;         // (Lambda_Y*)''(z_hat) = 1 / Lambda_Y''(0)
  double curvature_deterministic;  // I_1''(z_hat; Psi'(0)) = 1 / (Psi'(0) Lambda''(0))
};

inline RateComparison rate_comparison(double z, const PerturbationLaw& law, const ModelParams& p) {
  const double r = psi_derivs(law, 0.0).first;
  const PsiDerivs ly0 = lambda_Y_derivs(0.0, law, p);
  return {lambda_Y_star(z, law, p), rate_scaling1(z, r, p.lambda(), p.mu()), 1.0 / ly0.second,
          1.0 / (r * lambda_second_at_zero(p.lambda(), p.mu()))};
}

}  // namespace telegraph
