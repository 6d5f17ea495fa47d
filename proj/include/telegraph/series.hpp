#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "telegraph/error.hpp"
#include "telegraph/model.hpp"

// Raw moments E[C_x^n] and E[A_x^n] from their hypergeometric double-series
// representation. These are independent of the MGF route in analytic.hpp,
// which is what makes them useful as a cross-check.

namespace telegraph {

struct SeriesControl {
  double rel_tol = 1e-12;
  int max_terms_j = 500;
  int max_terms_2f1 = 10000;
  // Largest tolerated (max |term| / |sum|) * eps in the alternating j-series.
  double max_cancellation = 1e-8;
};

namespace detail {

inline bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

inline void check_control(const SeriesControl& ctrl) {
  if (!(ctrl.rel_tol > 0.0) || ctrl.max_terms_j < 1 || ctrl.max_terms_2f1 < 1)
    throw Error(ErrorCode::DomainError, "invalid SeriesControl");
}

// Rising factorial (a)_k.
inline double pochhammer(double a, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= a + i;
  return p;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace detail

/// Gauss hypergeometric 2F1(a, b; c; w) by direct summation of its series.
inline double gauss_2f1(double a, double b, double c, double w, const SeriesControl& ctrl = {}) {
  detail::check_control(ctrl);
  if (detail::is_nonpositive_integer(c))
    throw Error(ErrorCode::DomainError, "c must not be a nonpositive integer");

  const bool a_term = detail::is_nonpositive_integer(a);
  const bool b_term = detail::is_nonpositive_integer(b);
  if (a_term || b_term) {
    // Polynomial of degree min(-a, -b) in w.
    int last = static_cast<int>(-(a_term && b_term ? std::max(a, b) : (a_term ? a : b)));
    double sum = 1.0, term = 1.0;
    for (int k = 0; k < last; ++k) {
      term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * w;
      sum += term;
    }
    return sum;
  }
  if (!(std::abs(w) < 1.0)) throw Error(ErrorCode::DomainError, "need |w| < 1 for a non-terminating series");

  double sum = 1.0, term = 1.0;
  for (int k = 0; k < ctrl.max_terms_2f1; ++k) {
    const double ratio = (a + k) * (b + k) / ((c + k) * (k + 1)) * w;
    term *= ratio;
    sum += term;
    // Once the term ratio settles below one, the remaining tail is bounded by
    // a geometric series with that ratio.
    const double rho = std::abs(ratio);
    if (rho < 1.0 && k > 2 && std::abs(term) / (1.0 - rho) <= ctrl.rel_tol * std::abs(sum)) return sum;
  }
  throw Error(ErrorCode::NoConvergence, "2F1 series did not converge within max_terms_2f1");
}

enum class MomentKind { CycleC, AbsorptionA };

namespace detail {

// binom(j/2, h) * 2F1(-h, -j/2; j/2 + 1 - h; w), with binom(j/2, h) / (j/2 + 1 - h)_k
// cancelled into a polynomial. This keeps the terms where c is a nonpositive
// integer (and the binomial vanishes) at their finite limit.
inline double binom_times_2f1(int j, int h, double w) {
  const double r = 0.5 * j;
  const double hfact = factorial(h);
  double total = 0.0;
  double wk = 1.0;
  for (int k = 0; k <= h; ++k) {
    double poly = 1.0;
    for (int i = k + 1; i <= h; ++i) poly *= r - h + i;
    total += poly / hfact * pochhammer(-h, k) * pochhammer(-r, k) / factorial(k) * wk;
    wk *= w;
  }
  return total;
}

// sum_j [-(lambda - mu) x / 2]^j / j! * binom(j/2, h) * 2F1(...)
inline double j_series(int h, const ModelParams& p, const SeriesControl& ctrl) {
  const double sl = std::sqrt(p.lambda()), sm = std::sqrt(p.mu());
  const double w = std::pow((sl - sm) / (sl + sm), 2);
  const double c = -(p.lambda() - p.mu()) * p.x() / 2.0;

  double coef = 1.0;  // c^j / j!
  double sum = 0.0, max_abs = 0.0;
  int small_run = 0;
  for (int j = 0; j < ctrl.max_terms_j; ++j) {
    const double term = coef * binom_times_2f1(j, h, w);
    sum += term;
    max_abs = std::max(max_abs, std::abs(term));
    // Terms only decay once j has passed both |c| and the polynomial degree.
    if (j > std::abs(c) && j >= 2 * h + 2) {
      small_run = std::abs(term) <= ctrl.rel_tol * std::abs(sum) ? small_run + 1 : 0;
      if (small_run >= 3) {
        if (sum != 0.0 &&
            max_abs / std::abs(sum) * std::numeric_limits<double>::epsilon() > ctrl.max_cancellation)
          throw Error(ErrorCode::PrecisionLoss,
                      "j-series cancellation too large for double precision (reduce (lambda-mu)x)");
        return sum;
      }
    }
    coef *= c / (j + 1);
  }
  throw Error(ErrorCode::NoConvergence, "j-series did not converge within max_terms_j");
}

}  // namespace detail

/// n-th raw moment of the renewal cycle C_x or of the absorption time A_x.
inline double series_moment(MomentKind kind, int n, const ModelParams& p, const SeriesControl& ctrl = {}) {
  detail::check_control(ctrl);
  if (n < 0) throw Error(ErrorCode::DomainError, "moment order must be >= 0");
  if (n == 0) return 1.0;

  const double l = p.lambda(), m = p.mu(), a = p.alpha(), x = p.x();
  const double sl = std::sqrt(l), sm = std::sqrt(m);
  const double gap2 = (sl - sm) * (sl - sm);
  const double w0 = 4.0 * l * m / ((l + m) * (l + m));
  const double nfact = detail::factorial(n);
  const double growth = std::exp(x * (l - m) / 2.0);

  double total = 0.0;
  if (kind == MomentKind::CycleC) {
    for (int h = 0; h <= n; ++h) {
      const double f = gauss_2f1((1.0 + n - h) / 2.0, (2.0 + n - h) / 2.0, 2.0, w0, ctrl);
      total += std::pow(-(l + m) / gap2, h) * f * detail::j_series(h, p, ctrl);
    }
    return l / (l + m) * growth * std::pow(2.0, n) * nfact / std::pow(l + m, n) * total;
  }

  // D = mu + lambda (alpha - 1) appears to the power -(n - h + 1); the moments are
  // continuous through D = 0 but this representation is not.
  const double big_d = m + l * (a - 1.0);
  if (std::abs(big_d) <= 1e-9 * (l + m))
    throw Error(ErrorCode::DomainError,
                "series has a removable singularity at alpha = 1 - mu/lambda; use closed_moments");
  const double q = a * big_d / (l + m);
  const double refl = 8.0 * l * (a - 1.0);  // zero when alpha = 1
  for (int h = 0; h <= n; ++h) {
    const int k = n - h;
    double bracket = std::pow(refl, k) * 2.0 * big_d;
    for (int mm = 1; mm <= k; ++mm) {
      const double f = gauss_2f1((mm + 1.0) / 2.0, (mm + 2.0) / 2.0, 2.0, w0, ctrl);
      bracket += 2.0 * l * m / (l + m) * std::pow(8.0 * l * q, mm) * std::pow(refl, k - mm) * f;
    }
    total += std::pow(-2.0 / gap2, h) * bracket / std::pow(4.0 * l * a * big_d, k + 1) *
             detail::j_series(h, p, ctrl);
  }
  return 2.0 * a * l * nfact * growth * total;
}

}  // namespace telegraph
