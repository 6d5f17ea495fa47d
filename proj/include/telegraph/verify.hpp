#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "telegraph/analytic.hpp"
#include "telegraph/error.hpp"
#include "telegraph/estimate.hpp"
#include "telegraph/model.hpp"
#include "telegraph/rng.hpp"
#include "telegraph/simulate.hpp"

// Monte Carlo checks of the closed forms. Every check is a pure function of
// its inputs and seed, so a report can be regenerated bit for bit.

namespace telegraph {

struct VerificationReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<double> observed;
  std::vector<double> expected;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool assessed = true;  // false when the inputs are outside the check's regime
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

struct KsResult {
  double statistic;
  double critical_95;
};

/// Two-sample Kolmogorov-Smirnov distance with the asymptotic 95% critical value.
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "KS needs two nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, 1.358 * std::sqrt((na + nb) / (na * nb))};
}

/// One-sample KS distance between `values` and the standard normal CDF.
inline double ks_one_sample_normal(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptySample, "KS needs a nonempty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = normal_cdf(values[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline std::vector<std::pair<std::string, double>> param_record(const ModelParams& p) {
  return {{"lambda", p.lambda()}, {"mu", p.mu()}, {"alpha", p.alpha()}, {"x", p.x()}};
}

// Right end of the finiteness domain of the MGF.
inline double mgf_boundary(const ModelParams& p) {
  const RegimeClass rc = classify_regime(p);
  return rc.s_hat.value_or(rc.s_max);
}

}  // namespace detail

/// Monte Carlo mean of exp(s A) against the closed-form MGF, within 4 standard errors.
inline VerificationReport verify_mgf(const ModelParams& p, const std::vector<double>& s_grid, std::size_t n,
                                     std::uint64_t seed, std::size_t shards = 1) {
  const double limit = 0.5 * detail::mgf_boundary(p);
  for (double s : s_grid)
    if (s > limit)
      throw Error(ErrorCode::GridOutOfDomain,
                  "s = " + detail::num(s) + " exceeds half the MGF domain bound " + detail::num(limit));

  VerificationReport rep{"mgf", detail::param_record(p), {}, {}, 0.0, 4.0, true, true, n, seed, {}};
  const AbsorptionBatch batch = batch_absorption(p, n, seed, shards);
  std::vector<double> e(n);
  for (double s : s_grid) {
    for (std::size_t i = 0; i < n; ++i) e[i] = std::exp(s * batch.values[i]);
    const SampleStats st = summarize(e);
    const double analytic = mgf_absorption(s, p).value();
    const double se = st.std_error.value_or(0.0);
    const double gap = std::abs(st.mean - analytic);
    rep.observed.push_back(st.mean);
    rep.expected.push_back(analytic);
    rep.inputs.emplace_back("s", s);
    const double in_se = gap == 0.0 ? 0.0 : (se > 0.0 ? gap / se : std::numeric_limits<double>::infinity());
    rep.discrepancy = std::max(rep.discrepancy, in_se);
    if (!(gap <= rep.tolerance * se)) rep.pass = false;
  }
  return rep;
}

/// Pairwise KS between samples of mu A_{x/mu}(beta mu, mu) over `mus`, plus the
/// exact mu-invariance of the MGF on a grid of s.
inline VerificationReport weak_limit_check(double beta, double x, double alpha, const std::vector<double>& mus,
                                           std::size_t n, std::uint64_t seed, std::size_t shards = 1) {
  if (mus.empty()) throw Error(ErrorCode::DomainError, "need at least one mu");
  VerificationReport rep{"weak_limit", {{"beta", beta}, {"x", x}, {"alpha", alpha}}, {}, {}, 0.0, 0.0,
                         true,         true,
                         n,            seed,
                         {}};
  for (double mu : mus) rep.inputs.emplace_back("mu", mu);

  std::vector<std::vector<double>> samples;
  for (std::size_t k = 0; k < mus.size(); ++k)
    samples.push_back(sample_weak_limit(beta, mus[k], x, alpha, n, mix_seed(seed + k), shards));

  auto record = [&](const KsResult& ks) {
    rep.observed.push_back(ks.statistic);
    rep.expected.push_back(ks.critical_95);
    rep.discrepancy = std::max(rep.discrepancy, ks.statistic / ks.critical_95);
    if (!(ks.statistic < ks.critical_95)) rep.pass = false;
  };
  if (samples.size() == 1) {
    const KsResult ks = ks_two_sample(samples[0], samples[0]);
    rep.observed.push_back(ks.statistic);
    rep.expected.push_back(ks.critical_95);
  }
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) record(ks_two_sample(samples[i], samples[j]));

  // MGF of mu A_{x/mu}(beta mu, mu) at s is MGF of A_{x/mu}(beta mu, mu) at s mu.
  const ModelParams base = Scaling2Params{beta, 1.0, x}.to_model(alpha);
  const double bound = detail::mgf_boundary(base);
  double worst = 0.0;
  for (double s : {-5.0, -1.0, -0.25, 0.0, 0.25 * bound, 0.5 * bound, 0.9 * bound}) {
    const double ref = mgf_absorption(s, base).value();
    for (double mu : mus) {
      const ModelParams scaled = Scaling2Params{beta, mu, x / mu}.to_model(alpha);
      const double v = mgf_absorption(s * mu, scaled).value();
      worst = std::max(worst, std::abs(v - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  rep.notes.push_back("mgf mu-invariance max relative gap " + detail::num(worst));
  if (!(worst <= 1e-12)) rep.pass = false;
  rep.tolerance = 1.0;  // KS statistic / critical value
  return rep;
}

struct DecayOne {
  double r;
  double lambda;
  double mu;
  double alpha;
  double z;
  std::vector<double> xs;
};
struct DecayTwo {
  double x;
  double beta;
  double alpha;
  double z;
  std::vector<double> mus;
};
using DecayScaling = std::variant<DecayOne, DecayTwo>;

/// Empirical -(1/speed) log P(A >= z) at increasing scales, compared with the
/// rate function at z. Passes when the estimates move monotonically towards
/// the rate and the last one is within 50% of it.
inline VerificationReport decay_rate_estimate(const DecayScaling& scaling, std::size_t n, std::uint64_t seed,
                                              std::size_t shards = 1) {
  VerificationReport rep{"decay_rate", {}, {}, {}, 0.0, 0.5, true, true, n, seed, {}};
  std::vector<double> scales;
  std::vector<ModelParams> params;
  double rate_at_z, threshold_scale_free;
  bool per_scale_threshold;

  if (const auto* one = std::get_if<DecayOne>(&scaling)) {
    const ModelParams p0 = validate(one->lambda, one->mu, one->alpha, 0.0);
    if (one->z < one->r * z1(one->lambda, one->mu))
      throw Error(ErrorCode::DomainError, "z must not lie below the limit point r z1");
    rep.inputs = {{"r", one->r}, {"lambda", one->lambda}, {"mu", one->mu}, {"alpha", one->alpha}, {"z", one->z}};
    const Regime reg = regime_of(one->lambda, one->mu, one->alpha);
    rate_at_z = reg == Regime::Smooth
                    ? rate_scaling1(one->z, one->r, one->lambda, one->mu).value()
                    : one->r * legendre_star_constrained(one->z / one->r, one->lambda, one->mu, one->alpha).value();
    for (double v : one->xs) {
      scales.push_back(v);
      params.push_back(p0.with_x(one->r * v));
    }
    threshold_scale_free = one->z;  // event A_{rx} / x >= z
    per_scale_threshold = true;
  } else {
    const auto& two = std::get<DecayTwo>(scaling);
    if (two.z < two.x * z1(two.beta, 1.0))
      throw Error(ErrorCode::DomainError, "z must not lie below the limit point z2");
    rep.inputs = {{"x", two.x}, {"beta", two.beta}, {"alpha", two.alpha}, {"z", two.z}};
    const Regime reg = regime_of(two.beta, 1.0, two.alpha);
    rate_at_z = reg == Regime::Smooth
                    ? rate_scaling2(two.z, two.x, two.beta).value()
                    : two.x * legendre_star_constrained(two.z / two.x, two.beta, 1.0, two.alpha).value();
    for (double mu : two.mus) {
      scales.push_back(mu);
      params.push_back(Scaling2Params{two.beta, mu, two.x}.to_model(two.alpha));
    }
    threshold_scale_free = two.z;  // event A >= z
    per_scale_threshold = false;
  }
  if (scales.empty()) throw Error(ErrorCode::DomainError, "need at least one scale value");

  for (std::size_t k = 0; k < scales.size(); ++k) {
    rep.inputs.emplace_back("scale", scales[k]);
    const AbsorptionBatch b = batch_absorption(params[k], n, mix_seed(seed + k), shards);
    const double cut = per_scale_threshold ? threshold_scale_free * scales[k] : threshold_scale_free;
    const auto hits = std::count_if(b.values.begin(), b.values.end(), [&](double a) { return a >= cut; });
    if (hits == 0)
      throw Error(ErrorCode::ZeroHits, "no sample reached z at scale " + detail::num(scales[k]) + " with n = " +
                                           std::to_string(n));
    const double prob = static_cast<double>(hits) / static_cast<double>(n);
    rep.observed.push_back(-std::log(prob) / scales[k]);
    rep.expected.push_back(rate_at_z);
  }

  bool monotone = true;
  for (std::size_t k = 1; k < rep.observed.size(); ++k)
    if (!(std::abs(rep.observed[k] - rate_at_z) < std::abs(rep.observed[k - 1] - rate_at_z))) monotone = false;
  const double last_gap = std::abs(rep.observed.back() - rate_at_z);
  if (rate_at_z > 0.0) {
    rep.discrepancy = last_gap / rate_at_z;
  } else {
    // Typical event: compare against one nat of probability at the largest scale.
    rep.discrepancy = last_gap * scales.back();
    rep.tolerance = 1.0;
  }
  rep.pass = monotone && rep.discrepancy < rep.tolerance;
  if (!monotone) rep.notes.emplace_back("estimates do not approach the rate monotonically");

  // Slopes of log P between consecutive scales cancel a scale-independent
  // prefactor; reported for diagnosis only.
  for (std::size_t k = 1; k < rep.observed.size(); ++k) {
    const double lp1 = -rep.observed[k - 1] * scales[k - 1], lp2 = -rep.observed[k] * scales[k];
    rep.notes.push_back("log-probability slope between scales " + detail::num(scales[k - 1]) + " and " +
                        detail::num(scales[k]) + ": " + detail::num(-(lp2 - lp1) / (scales[k] - scales[k - 1])));
  }
  return rep;
}

/// mu Var[A_x(beta mu, mu)] - x Lambda''(0; beta, 1) against Delta(alpha, beta) / mu.
inline VerificationReport variance_scaling_check(double beta, double x, double alpha, const std::vector<double>& mus) {
  VerificationReport rep{"variance_scaling", {{"beta", beta}, {"x", x}, {"alpha", alpha}}, {}, {}, 0.0, 1e-10, true,
                         true, 0, 0, {}};
  const double limit = x * lambda_second_at_zero(beta, 1.0);
  const double delta = variance_gap_delta(alpha, beta);
  for (double mu : mus) {
    rep.inputs.emplace_back("mu", mu);
    const ModelParams p = Scaling2Params{beta, mu, x}.to_model(alpha);
    const double gap = mu * closed_moments(p).var_A - limit;
    const double want = delta / mu;
    rep.observed.push_back(gap);
    rep.expected.push_back(want);
    rep.discrepancy = std::max(rep.discrepancy, std::abs(gap - want) / std::abs(want));
  }
  rep.pass = rep.discrepancy <= rep.tolerance;
  return rep;
}

inline constexpr double kNormalityMinMu = 1000.0;

/// One-sample KS distance of the standardised absorption times to N(0, 1).
inline VerificationReport normality_check(double beta, double mu, double x, double alpha, std::size_t n,
                                          std::uint64_t seed, std::size_t shards = 1) {
  const ModelParams p = Scaling2Params{beta, mu, x}.to_model(alpha);
  VerificationReport rep{"normality", detail::param_record(p), {}, {}, 0.0, 0.03, true, true, n, seed, {}};
  const MomentSummary m = closed_moments(p);
  const double sd = std::sqrt(m.var_A);
  AbsorptionBatch b = batch_absorption(p, n, seed, shards);
  for (double& v : b.values) v = (v - m.mean_A) / sd;
  const SampleStats st = summarize(b.values);
  rep.discrepancy = ks_one_sample_normal(b.values);
  rep.observed = {rep.discrepancy, st.mean};
  rep.expected = {0.0, 0.0};
  rep.pass = rep.discrepancy < rep.tolerance;
  if (mu < kNormalityMinMu) {
    rep.assessed = false;
    rep.pass = true;
    rep.notes.emplace_back("out of regime: mu below " + detail::num(kNormalityMinMu) +
                           ", normal approximation not assessed");
  }
  return rep;
}

}  // namespace telegraph
