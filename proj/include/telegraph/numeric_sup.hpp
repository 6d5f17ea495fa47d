#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

// Derivative-free maximisation of a concave function on a half line. Used as
// an independent oracle for the closed-form Legendre transforms.

namespace telegraph {

/// sup of a concave f over (-inf, hi]. The bracket is grown leftwards by
/// doubling until f turns down, then narrowed by golden-section search.
inline double concave_sup(const std::function<double(double)>& f, double hi, int iterations = 300) {
  double d = 1.0;
  while (f(hi - 2.0 * d) >= f(hi - d) && d < 1e12) d *= 2.0;
  double a = hi - 2.0 * d, b = hi;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), e = a + g * (b - a);
  double fc = f(c), fe = f(e);
  double best = std::max({f(hi), fc, fe});
  for (int i = 0; i < iterations && b - a > 1e-15 * (1.0 + std::abs(b)); ++i) {
    if (fc < fe) {
      a = c;
      c = e;
      fc = fe;
      e = a + g * (b - a);
      fe = f(e);
    } else {
      b = e;
      e = c;
      fe = fc;
      c = b - g * (b - a);
      fc = f(c);
    }
    best = std::max({best, fc, fe});
  }
  return best;
}

}  // namespace telegraph
