#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>

#include "json.hpp"

#include "telegraph/error.hpp"
#include "telegraph/estimate.hpp"
#include "telegraph/ext_real.hpp"
#include "telegraph/simulate.hpp"
#include "telegraph/verify.hpp"
#include "telegraph/version.hpp"

// CSV and JSON emission. Numbers are printed with 17 significant digits so
// that every double survives a text round trip unchanged.

namespace telegraph {

inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string param_comment(const ModelParams& p) {
  return "lambda=" + format_double(p.lambda()) + " mu=" + format_double(p.mu()) +
         " alpha=" + format_double(p.alpha()) + " x=" + format_double(p.x());
}

/// Batch CSV. The shard count is deliberately left out of the file: the
/// values do not depend on it, and files from different shard counts must
/// compare equal byte for byte.
inline void write_batch_csv(std::ostream& os, const AbsorptionBatch& b) {
  os << "# telegraph " << kVersion << " batch " << param_comment(b.params) << " seed=" << b.seed
     << " n=" << b.n << "\n";
  os << "absorption_time\n";
  for (double v : b.values) os << format_double(v) << '\n';
}

/// Path CSV with columns t,position,kind. The first row is the start point;
/// a path cut off by a finite horizon ends with a "horizon" row.
inline void write_path_csv(std::ostream& os, const PathTrace& trace, std::uint64_t seed, std::uint64_t stream_id,
                           double horizon = std::numeric_limits<double>::infinity()) {
  os << "# telegraph " << kVersion << " path " << param_comment(trace.params) << " seed=" << seed
     << " stream=" << stream_id << " horizon=" << format_double(horizon) << "\n";
  os << "t,position,kind\n";
  os << "0," << format_double(trace.params.x()) << ",start\n";
  for (const PathEvent& e : trace.events)
    os << format_double(e.time) << ',' << format_double(e.position) << ',' << to_string(e.kind) << '\n';
  if (!trace.absorbed_at && std::isfinite(horizon)) {
    double t = 0.0, pos = trace.params.x();
    bool up = true;
    if (!trace.events.empty()) {
      t = trace.events.back().time;
      pos = trace.events.back().position;
      up = trace.events.back().kind != EventKind::SwitchToDown;
    }
    pos += (up ? 1.0 : -1.0) * (horizon - t);
    os << format_double(horizon) << ',' << format_double(pos) << ",horizon\n";
  }
}

inline nlohmann::json ext_to_json(const ExtReal& v) {
  return v.is_finite() ? nlohmann::json(v.value()) : nlohmann::json(nullptr);
}

inline nlohmann::json optional_to_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

/// Non-finite doubles become null; JSON has no infinity.
inline nlohmann::json number_to_json(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

inline nlohmann::json to_json(const BetaEstimate& e) {
  return {{"point", ext_to_json(e.point)},
          {"ci_low", e.ci_low},
          {"ci_high", ext_to_json(e.ci_high)},
          {"delta", e.delta},
          {"inputs",
           {{"mean", e.inputs.mean},
            {"x", e.inputs.x},
            {"beta0", e.inputs.beta0},
            {"mu", e.inputs.mu},
            {"level", e.inputs.level}}},
          {"flags", e.flags},
          {"version", kVersion}};
}

inline nlohmann::json to_json(const SampleStats& s) {
  return {{"mean", s.mean}, {"variance", optional_to_json(s.variance)}, {"std_error", optional_to_json(s.std_error)}};
}

inline nlohmann::json to_json(const AbsorptionBatch& b) {
  return {{"params", {{"lambda", b.params.lambda()}, {"mu", b.params.mu()}, {"alpha", b.params.alpha()},
                      {"x", b.params.x()}}},
          {"seed", b.seed},
          {"n", b.n},
          {"shards", b.shards},
          {"stats", to_json(b.stats)},
          {"version", kVersion}};
}

/// Repeated input names (one "mu" per scale, say) collapse into an array.
inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& [k, v] : r.inputs) {
    if (!inputs.contains(k)) {
      inputs[k] = number_to_json(v);
    } else {
      if (!inputs[k].is_array()) inputs[k] = nlohmann::json::array({inputs[k]});
      inputs[k].push_back(number_to_json(v));
    }
  }
  nlohmann::json observed = nlohmann::json::array(), expected = nlohmann::json::array();
  for (double v : r.observed) observed.push_back(number_to_json(v));
  for (double v : r.expected) expected.push_back(number_to_json(v));
  return {{"name", r.name},           {"inputs", inputs},
          {"observed", observed},     {"expected", expected},
          {"discrepancy", number_to_json(r.discrepancy)}, {"tolerance", r.tolerance},
          {"pass", r.pass},           {"assessed", r.assessed},
          {"n", r.n_samples},         {"seed", r.seed},
          {"notes", r.notes},         {"version", kVersion}};
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  return f;
}

}  // namespace telegraph
