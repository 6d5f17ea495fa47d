// Command-line front end. Exit status: 0 success, 1 a check failed,
// 2 usage or domain error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "telegraph/acceptance.hpp"
#include "telegraph/telegraph.hpp"

namespace tg = telegraph;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct ModelOpts {
  double lambda = 0, mu = 0, alpha = 1, x = 0;
  void add(CLI::App* app, bool need_x = true) {
    app->add_option("--lambda", lambda, "upward switching rate")->required();
    app->add_option("--mu", mu, "downward switching rate")->required();
    app->add_option("--alpha", alpha, "absorption probability in (0, 1]")->capture_default_str();
    auto* xo = app->add_option("--x", x, "starting height");
    if (need_x) xo->required();
  }
  tg::ModelParams params() const { return tg::validate(lambda, mu, alpha, x); }
};

// Writes to a file, or stdout for "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path != "-") file_ = tg::open_output(path);
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::optional<std::ofstream> file_;
};

std::vector<double> grid(double from, double to, int steps) {
  if (steps < 1) throw CLI::ValidationError("--steps", "must be >= 1");
  std::vector<double> g;
  for (int i = 0; i <= steps; ++i) g.push_back(from + (to - from) * i / steps);
  return g;
}

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
  return s;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void emit_rows(std::ostream& os, const std::string& format, const std::vector<std::string>& cols,
               const std::vector<std::vector<double>>& rows, const std::string& header, const json& meta) {
  if (format == "json") {
    json out = meta;
    out["columns"] = cols;
    json data = json::array();
    for (const auto& r : rows) {
      json row = json::array();
      for (double v : r) row.push_back(tg::number_to_json(v));
      data.push_back(row);
    }
    out["rows"] = data;
    os << out.dump() << '\n';
    return;
  }
  os << "# " << header << '\n';
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << tg::format_double(r[i]);
    os << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic-boundary telegraph process: simulation, rate functions and estimation of beta"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tg::kVersion);
  const std::string invocation = command_line(argc, argv);
  int status = kOk;

  // simulate
  ModelOpts sim_model;
  std::size_t sim_n = 1000, sim_shards = 1;
  std::uint64_t sim_seed = 0;
  std::string sim_out = "-", sim_stats;
  auto* sim = app.add_subcommand("simulate", "sample absorption times; batch CSV to --out, stats JSON to --stats");
  sim_model.add(sim);
  sim->add_option("--n", sim_n, "number of samples")->capture_default_str();
  sim->add_option("--seed", sim_seed, "64-bit seed")->required();
  sim->add_option("--shards", sim_shards, "worker threads; output does not depend on it")->capture_default_str();
  sim->add_option("--out", sim_out, "batch CSV path, - for stdout")->capture_default_str();
  sim->add_option("--stats", sim_stats, "stats JSON path (default: stderr)");
  sim->callback([&] {
    const tg::AbsorptionBatch b = tg::batch_absorption(sim_model.params(), sim_n, sim_seed, sim_shards);
    Sink out(sim_out);
    tg::write_batch_csv(out.os(), b);
    json stats = tg::to_json(b);
    stats["command"] = invocation;
    if (sim_stats.empty()) {
      std::cerr << stats.dump() << '\n';
    } else {
      Sink s(sim_stats);
      s.os() << stats.dump(2) << '\n';
    }
  });

  // paths
  std::vector<double> path_beta{1.25}, path_alpha{0.9}, path_mu{1, 10, 100};
  double path_x = 1, path_horizon = std::numeric_limits<double>::infinity();
  std::uint64_t path_seed = 0;
  std::string path_dir = ".";
  auto* paths = app.add_subcommand("paths", "write one t,position,kind CSV per (mu, alpha, beta) in the sweep");
  paths->add_option("--beta", path_beta, "beta values (lambda = beta mu)")->expected(1, -1)->capture_default_str();
  paths->add_option("--alpha", path_alpha, "alpha values")->expected(1, -1)->capture_default_str();
  paths->add_option("--mu", path_mu, "mu values")->expected(1, -1)->capture_default_str();
  paths->add_option("--x", path_x, "starting height")->capture_default_str();
  paths->add_option("--seed", path_seed, "64-bit seed")->required();
  paths->add_option("--horizon", path_horizon, "stop recording after this time");
  paths->add_option("--out-dir", path_dir, "output directory")->capture_default_str();
  paths->callback([&] {
    if (path_beta.empty() || path_alpha.empty() || path_mu.empty())
      throw CLI::ValidationError("sweep", "every sweep list needs at least one value");
    std::filesystem::create_directories(path_dir);
    std::uint64_t stream = 0;
    for (double mu : path_mu)
      for (double alpha : path_alpha)
        for (double beta : path_beta) {
          const tg::ModelParams p = tg::Scaling2Params{beta, mu, path_x}.to_model(alpha);
          tg::RngStream rng(path_seed, stream);
          const tg::PathTrace t = tg::simulate_path(p, rng, path_horizon);
          const std::string name = path_dir + "/path_mu" + short_num(mu) + "_alpha" + short_num(alpha) + "_beta" +
                                   short_num(beta) + ".csv";
          Sink f(name);
          tg::write_path_csv(f.os(), t, path_seed, stream, path_horizon);
          std::cout << name << '\n';
          ++stream;
        }
  });

  // rate
  int rate_scaling = 2, rate_steps = 100;
  std::string rate_kind = "ld", rate_format = "csv", rate_out = "-";
  double rate_lambda = 0, rate_mu = 0, rate_r = 1, rate_x = 1, rate_beta = 0, rate_alpha = 1;
  double rate_from = 0, rate_to = 0;
  auto* rate = app.add_subcommand("rate", "tabulate a large or moderate deviation rate function");
  rate->add_option("--scaling", rate_scaling, "1: x -> inf, 2: mu -> inf")->check(CLI::IsMember({1, 2}))->required();
  rate->add_option("--kind", rate_kind, "ld or md")->check(CLI::IsMember({"ld", "md"}))->capture_default_str();
  rate->add_option("--lambda", rate_lambda, "scaling 1: upward rate");
  rate->add_option("--mu", rate_mu, "scaling 1: downward rate");
  rate->add_option("--r", rate_r, "scaling 1: start multiplier")->capture_default_str();
  rate->add_option("--x", rate_x, "scaling 2: start")->capture_default_str();
  rate->add_option("--beta", rate_beta, "scaling 2: lambda / mu");
  rate->add_option("--alpha", rate_alpha, "absorption probability (constrained transform below critical)")
      ->capture_default_str();
  rate->add_option("--z-from", rate_from)->required();
  rate->add_option("--z-to", rate_to)->required();
  rate->add_option("--steps", rate_steps, "number of intervals")->capture_default_str();
  rate->add_option("--format", rate_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  rate->add_option("--out", rate_out)->capture_default_str();
  rate->callback([&] {
    double l, m, scale;
    if (rate_scaling == 1) {
      if (rate_lambda <= 0 || rate_mu <= 0) throw CLI::ValidationError("--lambda/--mu", "required for scaling 1");
      l = rate_lambda, m = rate_mu, scale = rate_r;
    } else {
      if (rate_beta <= 0) throw CLI::ValidationError("--beta", "required for scaling 2");
      l = rate_beta, m = 1.0, scale = rate_x;
    }
    const tg::ModelParams p = tg::validate(l, m, rate_alpha, scale);
    const bool smooth = tg::regime_of(l, m, rate_alpha) == tg::Regime::Smooth;
    std::vector<std::vector<double>> rows;
    for (double z : grid(rate_from, rate_to, rate_steps)) {
      double v;
      if (rate_kind == "md") {
        v = rate_scaling == 1 ? tg::md_rate(z, tg::ScalingOne{l, m}) : tg::md_rate(z, tg::ScalingTwo{scale, l});
      } else {
        const tg::ExtReal u = smooth ? tg::legendre_star(z / scale, l, m)
                                     : tg::legendre_star_constrained(z / scale, l, m, rate_alpha);
        v = u.is_finite() ? scale * u.value() : u.raw();
      }
      rows.push_back({z, v});
    }
    json meta{{"command", invocation}, {"version", tg::kVersion}, {"scaling", rate_scaling}, {"kind", rate_kind},
              {"lambda", p.lambda()},  {"mu", p.mu()},             {"alpha", rate_alpha},    {"scale", scale}};
    Sink out(rate_out);
    emit_rows(out.os(), rate_format, {"z", "rate"}, rows, invocation, meta);
  });

  // mgf
  ModelOpts mgf_model;
  double mgf_from = -1, mgf_to = 0;
  int mgf_steps = 100;
  std::string mgf_format = "csv", mgf_out = "-";
  auto* mgf = app.add_subcommand("mgf", "tabulate E[exp(s A)] and Lambda(s)");
  mgf_model.add(mgf);
  mgf->add_option("--s-from", mgf_from)->capture_default_str();
  mgf->add_option("--s-to", mgf_to)->capture_default_str();
  mgf->add_option("--steps", mgf_steps)->capture_default_str();
  mgf->add_option("--format", mgf_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  mgf->add_option("--out", mgf_out)->capture_default_str();
  mgf->callback([&] {
    const tg::ModelParams p = mgf_model.params();
    std::vector<std::vector<double>> rows;
    for (double s : grid(mgf_from, mgf_to, mgf_steps))
      rows.push_back({s, tg::mgf_absorption(s, p).raw(), tg::lambda_fn(s, p.lambda(), p.mu()).raw()});
    const tg::RegimeClass rc = tg::classify_regime(p);
    json meta{{"command", invocation}, {"version", tg::kVersion}, {"regime", tg::to_string(rc.tag)},
              {"s_max", rc.s_max}, {"s_hat", tg::optional_to_json(rc.s_hat)}};
    Sink out(mgf_out);
    emit_rows(out.os(), mgf_format, {"s", "mgf", "lambda"}, rows, invocation, meta);
  });

  // moments
  ModelOpts mom_model;
  int mom_order = 2;
  auto* mom = app.add_subcommand("moments", "closed-form moments, regime and series moments as JSON");
  mom_model.add(mom);
  mom->add_option("--order", mom_order, "highest series moment")->check(CLI::Range(0, 12))->capture_default_str();
  mom->callback([&] {
    const tg::ModelParams p = mom_model.params();
    const tg::MomentSummary m = tg::closed_moments(p);
    const tg::RegimeClass rc = tg::classify_regime(p);
    json out{{"params", {{"lambda", p.lambda()}, {"mu", p.mu()}, {"alpha", p.alpha()}, {"x", p.x()}}},
             {"regime", tg::to_string(rc.tag)},
             {"s_max", rc.s_max},
             {"s_hat", tg::optional_to_json(rc.s_hat)},
             {"alpha_critical", tg::alpha_critical(p.lambda(), p.mu())},
             {"closed", {{"mean_A", m.mean_A}, {"var_A", m.var_A}, {"mean_C", m.mean_C}, {"var_C", m.var_C}}},
             {"version", tg::kVersion}};
    for (auto [kind, key] : {std::pair{tg::MomentKind::AbsorptionA, "series_A"}, {tg::MomentKind::CycleC, "series_C"}}) {
      json arr = json::array();
      for (int n = 0; n <= mom_order; ++n) {
        try {
          arr.push_back(tg::series_moment(kind, n, p));
        } catch (const tg::Error& e) {
          arr.push_back(e.what());
        }
      }
      out[key] = arr;
    }
    std::cout << out.dump(2) << '\n';
  });

  // estimate-beta
  double est_mean = 0, est_x = 1, est_beta0 = 1.25, est_mu = 0, est_level = 0.95;
  std::optional<double> est_beta_star;
  auto* est = app.add_subcommand("estimate-beta", "point estimate and confidence interval for beta from a sample mean");
  est->add_option("--mean", est_mean, "sample mean of the absorption times")->required();
  est->add_option("--x", est_x)->capture_default_str();
  est->add_option("--beta0", est_beta0, "lower bound on beta")->capture_default_str();
  est->add_option("--mu", est_mu)->required();
  est->add_option("--level", est_level)->capture_default_str();
  est->add_option("--beta-star", est_beta_star, "true beta; adds the coverage check");
  est->callback([&] {
    json out = tg::to_json(tg::beta_confidence_interval(est_mean, est_x, est_beta0, est_mu, est_level));
    if (est_beta_star) {
      const bool covered = tg::coverage_check(est_mean, *est_beta_star, est_x, est_beta0, est_mu, est_level);
      out["coverage"] = {{"beta_star", *est_beta_star}, {"covered", covered}};
      if (!covered) status = kCheckFailed;
    }
    std::cout << out.dump(2) << '\n';
  });

  // reproduce
  int rep_table = 1;
  std::size_t rep_n = tg::kTableN, rep_shards = 1;
  std::uint64_t rep_seed = 1;
  std::string rep_format = "text";
  auto* rep = app.add_subcommand("reproduce", "rerun an estimation table with fresh simulations");
  rep->add_option("--table", rep_table, "1: varying alpha, 2: varying mu, 3: varying beta*")
      ->check(CLI::IsMember({1, 2, 3}))
      ->required();
  rep->add_option("--n", rep_n, "paths per row")->capture_default_str();
  rep->add_option("--seed", rep_seed, "row k uses mix_seed(seed + k)")->capture_default_str();
  rep->add_option("--shards", rep_shards)->capture_default_str();
  rep->add_option("--format", rep_format)->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
  rep->callback([&] {
    json rows = json::array();
    if (rep_format == "text")
      std::printf("# %s\n%-6s %-6s %-6s %-9s %-10s %-24s %-10s %s\n", invocation.c_str(), "alpha", "mu", "beta*",
                  "target", "mean", "confidence interval", "point", "covered");
    if (rep_format == "csv")
      std::printf("# %s\nalpha,mu,beta_star,target,mean,ci_low,ci_high,point,covered\n", invocation.c_str());
    std::uint64_t k = 0;
    for (const tg::TableRow& row : tg::table_rows(rep_table)) {
      const tg::ModelParams p = tg::Scaling2Params{row.beta_star, row.mu, tg::kTableX}.to_model(row.alpha);
      const std::uint64_t seed = tg::mix_seed(rep_seed + k++);
      const double mean = tg::batch_absorption(p, rep_n, seed, rep_shards).stats.mean;
      const double target = tg::kTableX * (row.beta_star + 1) / (row.beta_star - 1);
      const bool covered =
          tg::coverage_check(mean, row.beta_star, tg::kTableX, tg::kTableBeta0, row.mu, tg::kTableLevel);
      std::optional<tg::BetaEstimate> e;
      std::string why;
      try {
        e = tg::beta_confidence_interval(mean, tg::kTableX, tg::kTableBeta0, row.mu, tg::kTableLevel);
      } catch (const tg::Error& err) {
        why = err.what();
      }
      const double lo = e ? e->ci_low : NAN, hi = e ? e->ci_high.raw() : NAN, pt = e ? e->point.raw() : NAN;
      if (rep_format == "text") {
        const std::string ci = "(" + short_num(lo) + ", " + short_num(hi) + ")";
        std::printf("%-6g %-6g %-6g %-9.6g %-10.7g %-24s %-10.7g %s\n", row.alpha, row.mu, row.beta_star, target, mean,
                    ci.c_str(), pt, covered ? "yes" : "no");
      } else if (rep_format == "csv") {
        std::printf("%s,%s,%s,%s,%s,%s,%s,%s,%d\n", tg::format_double(row.alpha).c_str(),
                    tg::format_double(row.mu).c_str(), tg::format_double(row.beta_star).c_str(),
                    tg::format_double(target).c_str(), tg::format_double(mean).c_str(), tg::format_double(lo).c_str(),
                    tg::format_double(hi).c_str(), tg::format_double(pt).c_str(), covered);
      }
      json r{{"alpha", row.alpha}, {"mu", row.mu}, {"beta_star", row.beta_star}, {"target", target},
             {"mean", mean},       {"seed", seed},   {"covered", covered}};
      if (e) r["estimate"] = tg::to_json(*e);
      if (!why.empty()) r["error"] = why;
      rows.push_back(r);
    }
    if (rep_format == "json")
      std::cout << json{{"command", invocation}, {"table", rep_table}, {"n", rep_n}, {"seed", rep_seed},
                        {"shards", rep_shards}, {"version", tg::kVersion}, {"rows", rows}}
                       .dump(2)
                << '\n';
  });

  // verify
  bool ver_all = false, ver_list = false;
  std::vector<std::string> ver_names;
  tg::acceptance::Options ver_opt;
  std::string ver_out = "-";
  auto* ver = app.add_subcommand("verify", "run acceptance criteria; JSON lines of reports, exit 0 iff all pass");
  ver->add_flag("--all", ver_all, "run every criterion");
  ver->add_option("--criterion", ver_names, "run only these criteria");
  ver->add_flag("--list", ver_list, "list criterion names");
  ver->add_option("--seed", ver_opt.seed, "base seed")->capture_default_str();
  ver->add_option("--shards", ver_opt.shards)->capture_default_str();
  ver->add_option("--out", ver_out, "JSON lines destination, - for stdout")->capture_default_str();
  ver->callback([&] {
    const auto& all = tg::acceptance::criteria();
    if (ver_list) {
      for (const auto& c : all) std::cout << c.name << '\n';
      return;
    }
    if (!ver_all && ver_names.empty()) throw CLI::ValidationError("verify", "give --all, --criterion NAME or --list");
    for (const auto& n : ver_names)
      if (std::none_of(all.begin(), all.end(), [&](const auto& c) { return c.name == n; }))
        throw CLI::ValidationError("--criterion", "unknown criterion " + n);
    Sink out(ver_out);
    bool ok = true;
    for (const auto& c : all) {
      if (!ver_all && std::find(ver_names.begin(), ver_names.end(), c.name) == ver_names.end()) continue;
      const tg::acceptance::CriterionResult r = c.run(ver_opt);
      for (const auto& rep : r.reports) {
        json j = tg::to_json(rep);
        j["criterion"] = c.name;
        out.os() << j.dump() << '\n';
      }
      out.os() << json{{"criterion", c.name}, {"pass", r.pass}, {"summary", r.summary}, {"seed", ver_opt.seed},
                       {"version", tg::kVersion}}
                      .dump()
               << '\n';
      out.os().flush();
      std::cerr << (r.pass ? "PASS " : "FAIL ") << c.name << ": " << r.summary << '\n';
      ok = ok && r.pass;
    }
    if (!ok) status = kCheckFailed;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const tg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return status;
}
