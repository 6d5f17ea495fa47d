#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "telegraph/analytic.hpp"
#include "telegraph/estimate.hpp"
#include "telegraph/io.hpp"
#include "telegraph/model.hpp"
#include "telegraph/numeric_sup.hpp"
#include "telegraph/rng.hpp"
#include "telegraph/series.hpp"
#include "telegraph/simulate.hpp"
#include "telegraph/tables.hpp"
#include "telegraph/verify.hpp"

// The release acceptance criteria. Each criterion is a deterministic function
// of a base seed and a shard count; the CLI and the acceptance test binary
// both run them from here.

namespace telegraph::acceptance {

struct Options {
  std::uint64_t seed = 20240601;
  std::size_t shards = 1;
};

struct CriterionResult {
  std::string name;
  bool pass = true;
  std::string summary;
  std::vector<VerificationReport> reports;
};

struct Criterion {
  std::string name;
  std::function<CriterionResult(const Options&)> run;
};

inline constexpr int kSeedsPerCheck = 20;
inline constexpr int kSeedsRequired = 18;

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(8);
  os << v;
  return os.str();
}

inline VerificationReport scalar_report(std::string name, std::vector<std::pair<std::string, double>> inputs,
                                        double observed, double expected, double tolerance) {
  VerificationReport r{std::move(name), std::move(inputs), {observed}, {expected}, std::abs(observed - expected),
                       tolerance,       true,              true,       0,          0,
                       {}};
  r.pass = r.discrepancy <= tolerance;
  return r;
}

}  // namespace detail

/// Point estimates and intervals recomputed from the printed means.
inline CriterionResult table_exact(const Options&) {
  CriterionResult res{"table_exact", true, "", {}};
  const TableRow rows[] = {kTableVaryingAlpha[0], kTableVaryingMu[3]};
  for (const TableRow& row : rows) {
    const BetaEstimate e = beta_confidence_interval(row.printed_mean, kTableX, kTableBeta0, row.mu, kTableLevel);
    const std::vector<std::pair<std::string, double>> in{{"alpha", row.alpha}, {"mu", row.mu}, {"mean", row.printed_mean}};
    res.reports.push_back(detail::scalar_report("table_point", in, e.point.value(), row.printed_point, 1e-4));
    res.reports.push_back(detail::scalar_report("table_ci_low", in, e.ci_low, row.printed_ci_low, 1e-4));
    res.reports.push_back(detail::scalar_report("table_ci_high", in, e.ci_high.value(), row.printed_ci_high, 1e-4));
  }
  double worst = 0.0;
  for (const auto& r : res.reports) {
    res.pass = res.pass && r.pass;
    worst = std::max(worst, r.discrepancy);
  }
  res.summary = "max abs deviation " + detail::fmt(worst) + " (tolerance 1e-4)";
  return res;
}

/// Coverage of the target mean by fresh sample means, 20 seeds per row.
inline CriterionResult table_statistical(const Options& opt) {
  CriterionResult res{"table_statistical", true, "", {}};
  std::string worst_row;
  int worst_hits = kSeedsPerCheck + 1;
  int row_index = 0;
  for (int table : {1, 2}) {
    for (const TableRow& row : table_rows(table)) {
      const ModelParams p = Scaling2Params{row.beta_star, row.mu, kTableX}.to_model(row.alpha);
      VerificationReport rep{"table_coverage",
                             {{"table", table}, {"alpha", row.alpha}, {"mu", row.mu}, {"beta_star", row.beta_star}},
                             {}, {}, 0.0, kSeedsRequired, true, true, kTableN, opt.seed, {}};
      int hits = 0;
      for (int k = 0; k < kSeedsPerCheck; ++k) {
        const std::uint64_t seed = mix_seed(opt.seed + 1000u * static_cast<std::uint64_t>(row_index) + k);
        const double mean = batch_absorption(p, kTableN, seed, opt.shards).stats.mean;
        rep.observed.push_back(mean);
        hits += coverage_check(mean, row.beta_star, kTableX, kTableBeta0, row.mu, kTableLevel);
      }
      rep.expected = {kTableX * (row.beta_star + 1.0) / (row.beta_star - 1.0),
                      half_width(kTableX, kTableBeta0, row.mu, kTableLevel)};
      rep.discrepancy = hits;
      rep.pass = hits >= kSeedsRequired;
      rep.notes.push_back(std::to_string(hits) + "/" + std::to_string(kSeedsPerCheck) + " seeds covered");
      res.pass = res.pass && rep.pass;
      if (hits < worst_hits) {
        worst_hits = hits;
        worst_row = "table " + std::to_string(table) + " alpha=" + detail::fmt(row.alpha) + " mu=" + detail::fmt(row.mu);
      }
      res.reports.push_back(std::move(rep));
      ++row_index;
    }
  }
  res.summary = "fewest covering seeds " + std::to_string(worst_hits) + "/" + std::to_string(kSeedsPerCheck) + " at " +
                worst_row + " (need " + std::to_string(kSeedsRequired) + ")";
  return res;
}

/// Monte Carlo mean within 4 SE and variance within 10% of the closed forms.
inline CriterionResult moments_mc(const Options& opt) {
  CriterionResult res{"moments_mc", true, "", {}};
  const ModelParams sets[] = {validate(2, 1, 1, 1), validate(3, 2, 0.9, 0.5), validate(5, 1, 0.3, 2),
                              validate(4, 1, 0.25, 1), validate(2, 1, 0.5, 1)};
  constexpr std::size_t n = 100000;
  double worst_se = 0.0, worst_var = 0.0;
  std::uint64_t k = 0;
  for (const ModelParams& p : sets) {
    const std::uint64_t seed = mix_seed(opt.seed + 7 * k++);
    const AbsorptionBatch b = batch_absorption(p, n, seed, opt.shards);
    const MomentSummary m = closed_moments(p);
    const double se_gap = std::abs(b.stats.mean - m.mean_A) / *b.stats.std_error;
    const double var_gap = std::abs(*b.stats.variance - m.var_A) / m.var_A;
    VerificationReport rep{"moments", telegraph::detail::param_record(p), {b.stats.mean, *b.stats.variance},
                           {m.mean_A, m.var_A}, std::max(se_gap / 4.0, var_gap / 0.1), 1.0, true, true, n, seed, {}};
    rep.pass = se_gap <= 4.0 && var_gap <= 0.1;
    rep.notes.push_back("mean gap " + detail::fmt(se_gap) + " SE, variance gap " + detail::fmt(100 * var_gap) + "%");
    res.pass = res.pass && rep.pass;
    worst_se = std::max(worst_se, se_gap);
    worst_var = std::max(worst_var, var_gap);
    res.reports.push_back(std::move(rep));
  }
  res.summary = "worst mean gap " + detail::fmt(worst_se) + " SE (limit 4), worst variance gap " +
                detail::fmt(100 * worst_var) + "% (limit 10%)";
  return res;
}

/// Empirical MGF of A at (2,1,1,1).
inline CriterionResult mgf_mc(const Options& opt) {
  CriterionResult res{"mgf_mc", true, "", {}};
  const ModelParams p = validate(2, 1, 1, 1);
  res.reports.push_back(verify_mgf(p, {-1.0, -0.1, 0.0}, 100000, mix_seed(opt.seed + 11), opt.shards));
  res.reports.push_back(verify_mgf(p, {0.04}, 1000000, mix_seed(opt.seed + 12), opt.shards));
  double worst = 0.0;
  for (const auto& r : res.reports) {
    res.pass = res.pass && r.pass;
    worst = std::max(worst, r.discrepancy);
  }
  res.summary = "worst gap " + detail::fmt(worst) + " SE (limit 4)";
  return res;
}

/// Closed-form transforms against a golden-section supremum of s z - Lambda(s).
inline CriterionResult legendre_oracle(const Options& opt) {
  CriterionResult res{"legendre_oracle", true, "", {}};
  std::mt19937_64 gen(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int set = 0; set < 20; ++set) {
    const double mu = 0.2 + 4.8 * unit(gen);
    const double lambda = mu * (1.1 + 6.0 * unit(gen));
    const double ac = alpha_critical(lambda, mu);
    const bool constrained = set % 2 == 1;
    const double alpha = constrained ? ac * (0.05 + 0.9 * unit(gen)) : ac + (1.0 - ac) * (0.05 + 0.95 * unit(gen));
    // Lambda written out directly, independent of the library's evaluation.
    auto lam = [&](double s) {
      const double b = lambda + mu - 2.0 * s;
      return 0.5 * (lambda - mu - std::sqrt(std::max(0.0, b * b - 4.0 * lambda * mu)));
    };
    const double hi = constrained ? s_hat(lambda, mu, alpha) : 0.5 * std::pow(std::sqrt(lambda) - std::sqrt(mu), 2);
    VerificationReport rep{"legendre_oracle",
                           {{"lambda", lambda}, {"mu", mu}, {"alpha", alpha}},
                           {}, {}, 0.0, 1e-8, true, true, 0, opt.seed, {}};
    for (int i = 0; i <= 60; ++i) {
      const double z = 1.01 + (10.0 - 1.01) * i / 60.0;
      const double oracle = concave_sup([&](double s) { return s * z - lam(s); }, hi);
      const double closed = constrained ? legendre_star_constrained(z, lambda, mu, alpha).value()
                                        : legendre_star(z, lambda, mu).value();
      rep.discrepancy = std::max(rep.discrepancy, std::abs(oracle - closed) / std::max(1.0, std::abs(closed)));
    }
    rep.pass = rep.discrepancy <= rep.tolerance;
    res.pass = res.pass && rep.pass;
    worst = std::max(worst, rep.discrepancy);
    res.reports.push_back(std::move(rep));
  }
  res.summary = "worst deviation " + detail::fmt(worst) + " over 20 sets x 61 z (tolerance 1e-8)";
  return res;
}

/// Law of mu A_{x/mu}(beta mu, mu) does not depend on mu. The 18-of-20 seed
/// policy applies to each pair of mu values separately.
inline CriterionResult weak_limit(const Options& opt) {
  CriterionResult res{"weak_limit", true, "", {}};
  std::vector<int> below;  // per pair
  bool identity = true;
  for (int k = 0; k < kSeedsPerCheck; ++k) {
    VerificationReport rep = weak_limit_check(2.0, 1.0, 1.0, {1.0, 10.0, 100.0}, 10000,
                                              mix_seed(opt.seed + 100 + k), opt.shards);
    below.resize(rep.observed.size(), 0);
    bool ks_ok = true;
    for (std::size_t i = 0; i < rep.observed.size(); ++i) {
      const bool ok = rep.observed[i] < rep.expected[i];
      below[i] += ok;
      ks_ok = ks_ok && ok;
    }
    if (!rep.pass && ks_ok) identity = false;  // the only other way to fail
    res.reports.push_back(std::move(rep));
  }
  const int worst = *std::min_element(below.begin(), below.end());
  res.pass = identity && worst >= kSeedsRequired;
  std::string counts;
  for (int b : below) counts += (counts.empty() ? "" : "/") + std::to_string(b);
  res.summary = "seeds below KS critical value per mu pair (1,10)/(1,100)/(10,100): " + counts + " of " +
                std::to_string(kSeedsPerCheck) + " (need " + std::to_string(kSeedsRequired) + " each), MGF identity " +
                (identity ? "holds to 1e-12" : "violated");
  return res;
}

/// Variance-scaling identity and normality at mu = 1000.
inline CriterionResult md_endpoints(const Options& opt) {
  CriterionResult res{"md_endpoints", true, "", {}};
  res.reports.push_back(variance_scaling_check(3.0, 1.0, 1.0, {10.0, 100.0, 1000.0}));
  res.reports.push_back(variance_scaling_check(2.0, 1.0, 0.5, {100.0}));
  res.reports.push_back(normality_check(2.0, 1000.0, 1.0, 0.9, 10000, mix_seed(opt.seed + 200), opt.shards));
  for (const auto& r : res.reports) res.pass = res.pass && r.pass;
  res.summary = "variance identity rel gap " + detail::fmt(std::max(res.reports[0].discrepancy, res.reports[1].discrepancy)) +
                " (tolerance 1e-10), normality KS " + detail::fmt(res.reports[2].discrepancy) + " (limit 0.03)";
  return res;
}

/// Empirical decay of P(A >= z) under the second scaling.
inline CriterionResult ld_decay(const Options& opt) {
  CriterionResult res{"ld_decay", true, "", {}};
  VerificationReport rep =
      decay_rate_estimate(DecayTwo{1.0, 3.0, 1.0, 2.5, {10.0, 20.0, 40.0}}, 1000000, mix_seed(opt.seed + 300), opt.shards);
  res.pass = rep.pass;
  std::string est;
  for (double v : rep.observed) est += (est.empty() ? "" : ", ") + detail::fmt(v);
  res.summary = "estimates (" + est + ") vs rate " + detail::fmt(rep.expected.front()) + ", final relative gap " +
                detail::fmt(rep.discrepancy) + " (limit 0.5)";
  res.reports.push_back(std::move(rep));
  return res;
}

/// Hypergeometric moment series against the closed-form moments.
inline CriterionResult series_moments(const Options&) {
  CriterionResult res{"series_moments", true, "", {}};
  double worst = 0.0;
  for (const ModelParams& p : {validate(2, 1, 1, 1), validate(3, 2, 0.9, 0.5)}) {
    const MomentSummary m = closed_moments(p);
    const std::pair<MomentKind, std::pair<double, double>> cases[] = {
        {MomentKind::AbsorptionA, {m.mean_A, m.var_A + m.mean_A * m.mean_A}},
        {MomentKind::CycleC, {m.mean_C, m.var_C + m.mean_C * m.mean_C}}};
    for (const auto& [kind, want] : cases) {
      VerificationReport rep{kind == MomentKind::AbsorptionA ? "series_moment_A" : "series_moment_C",
                             telegraph::detail::param_record(p),
                             {series_moment(kind, 1, p), series_moment(kind, 2, p)},
                             {want.first, want.second},
                             0.0, 1e-6, true, true, 0, 0, {}};
      for (int i = 0; i < 2; ++i)
        rep.discrepancy = std::max(rep.discrepancy, std::abs(rep.observed[i] - rep.expected[i]) / std::abs(rep.expected[i]));
      rep.pass = rep.discrepancy <= rep.tolerance;
      res.pass = res.pass && rep.pass;
      worst = std::max(worst, rep.discrepancy);
      res.reports.push_back(std::move(rep));
    }
  }
  res.summary = "worst relative gap " + detail::fmt(worst) + " (tolerance 1e-6)";
  return res;
}

/// Batch CSV is byte-identical for 1, 4 and 16 shards.
inline CriterionResult determinism(const Options& opt) {
  CriterionResult res{"determinism", true, "", {}};
  const ModelParams p = validate(2, 1, 1, 1);
  std::vector<std::string> csv;
  for (std::size_t shards : {1u, 4u, 16u}) {
    std::ostringstream os;
    write_batch_csv(os, batch_absorption(p, 20000, opt.seed, shards));
    csv.push_back(os.str());
  }
  res.pass = csv[0] == csv[1] && csv[0] == csv[2];
  res.summary = std::string("20000-sample CSVs for shards 1/4/16 ") + (res.pass ? "identical" : "differ") + " (" +
                std::to_string(csv[0].size()) + " bytes)";
  return res;
}

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"table_exact", table_exact},       {"table_statistical", table_statistical},
      {"moments_mc", moments_mc},         {"mgf_mc", mgf_mc},
      {"legendre_oracle", legendre_oracle}, {"weak_limit", weak_limit},
      {"md_endpoints", md_endpoints},     {"ld_decay", ld_decay},
      {"series_moments", series_moments}, {"determinism", determinism},
  };
  return all;
}

}  // namespace telegraph::acceptance
