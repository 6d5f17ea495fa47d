#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "telegraph/error.hpp"
#include "telegraph/model.hpp"
#include "telegraph/rng.hpp"

// Exact event-driven simulation. Ascent and descent durations are drawn
// whole; the only comparison needed is whether a descent outlasts the
// current height, so there is no time step anywhere.

namespace telegraph {

enum class EventKind { SwitchToDown, SwitchToUp, HitOriginReflected, HitOriginAbsorbed };

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::SwitchToDown: return "switch_down";
    case EventKind::SwitchToUp: return "switch_up";
    case EventKind::HitOriginReflected: return "reflected";
    case EventKind::HitOriginAbsorbed: return "absorbed";
  }
  return "?";
}

struct PathEvent {
  double time;
  double position;
  EventKind kind;
};

struct PathTrace {
  ModelParams params;
  std::vector<PathEvent> events;
  std::optional<double> absorbed_at;
};

inline constexpr std::uint64_t kEventCap = 1'000'000'000ull;

/// Source of the three kinds of randomness the motion consumes.
template <class S>
concept DrawSource = requires(S& s, double rate, double alpha) {
  { s.ascent(rate) } -> std::convertible_to<double>;
  { s.descent(rate) } -> std::convertible_to<double>;
  { s.absorbs(alpha) } -> std::convertible_to<bool>;
};

class StreamDraws {
 public:
  explicit StreamDraws(RngStream& rng) : rng_(rng) {}
  double ascent(double lambda) { return rng_.exponential(lambda); }
  double descent(double mu) { return rng_.exponential(mu); }
  bool absorbs(double alpha) { return rng_.uniform() < alpha; }

 private:
  RngStream& rng_;
};

/// Runs one motion from x, reporting every event with time <= horizon to
/// `on_event`. Returns the absorption time, or nullopt if the horizon came first.
template <DrawSource Source, class Observer>
std::optional<double> run_motion(const ModelParams& p, Source& draws, Observer&& on_event,
                                 double horizon = std::numeric_limits<double>::infinity()) {
  const double lambda = p.lambda(), mu = p.mu(), alpha = p.alpha();
  double pos = p.x();
  double t = 0.0;
  for (std::uint64_t cycle = 0;; ++cycle) {
    if (cycle >= kEventCap)
      throw Error(ErrorCode::EventCapExceeded, "no absorption after " + std::to_string(kEventCap) + " cycles");
    const double up = draws.ascent(lambda);
    pos += up;
    t += up;
    if (t > horizon) return std::nullopt;
    on_event(PathEvent{t, pos, EventKind::SwitchToDown});

    const double down = draws.descent(mu);
    if (down >= pos) {
      t += pos;
      pos = 0.0;
      const bool absorbed = draws.absorbs(alpha);
      if (t > horizon) return std::nullopt;
      on_event(PathEvent{t, 0.0, absorbed ? EventKind::HitOriginAbsorbed : EventKind::HitOriginReflected});
      if (absorbed) return t;
    } else {
      t += down;
      pos -= down;
      if (t > horizon) return std::nullopt;
      on_event(PathEvent{t, pos, EventKind::SwitchToUp});
    }
  }
}

template <DrawSource Source>
double sample_absorption_time(const ModelParams& p, Source& draws) {
  return *run_motion(p, draws, [](const PathEvent&) {});
}

inline double sample_absorption_time(const ModelParams& p, RngStream& rng) {
  StreamDraws draws(rng);
  return sample_absorption_time(p, draws);
}

template <DrawSource Source>
PathTrace simulate_path(const ModelParams& p, Source& draws,
                        double horizon = std::numeric_limits<double>::infinity()) {
  PathTrace trace{p, {}, std::nullopt};
  trace.absorbed_at = run_motion(p, draws, [&](const PathEvent& e) { trace.events.push_back(e); }, horizon);
  return trace;
}

inline PathTrace simulate_path(const ModelParams& p, RngStream& rng,
                               double horizon = std::numeric_limits<double>::infinity()) {
  StreamDraws draws(rng);
  return simulate_path(p, draws, horizon);
}

struct SampleStats {
  double mean = 0.0;
  std::optional<double> variance;  // unbiased; absent for a single value
  std::optional<double> std_error;
};

/// Two-pass mean and unbiased variance, summing in index order.
inline SampleStats summarize(const std::vector<double>& v) {
  SampleStats s;
  if (v.empty()) return s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  if (v.size() < 2) return s;
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.variance = ss / static_cast<double>(v.size() - 1);
  s.std_error = std::sqrt(*s.variance / static_cast<double>(v.size()));
  return s;
}

struct AbsorptionBatch {
  ModelParams params;
  std::size_t n;
  std::uint64_t seed;
  std::size_t shards;
  std::vector<double> values;
  SampleStats stats;
};

/// n absorption times; sample i always uses RngStream(seed, i), so the result
/// does not depend on how the index range is split across worker threads.
inline AbsorptionBatch batch_absorption(const ModelParams& p, std::size_t n, std::uint64_t seed,
                                        std::size_t shards = 1) {
  if (n < 1) throw Error(ErrorCode::DomainError, "batch size must be >= 1");
  if (shards < 1) throw Error(ErrorCode::DomainError, "shard count must be >= 1");
  AbsorptionBatch batch{p, n, seed, shards, std::vector<double>(n), {}};

  const std::size_t workers = std::min(shards, n);
  std::vector<std::exception_ptr> errors(workers);
  auto run_shard = [&](std::size_t k) {
    const std::size_t begin = n * k / workers, end = n * (k + 1) / workers;
    try {
      for (std::size_t i = begin; i < end; ++i) {
        RngStream rng(seed, i);
        batch.values[i] = sample_absorption_time(p, rng);
      }
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  if (workers == 1) {
    run_shard(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(run_shard, k);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  batch.stats = summarize(batch.values);
  return batch;
}

/// n draws of mu * A_{x/mu}(beta mu, mu); their law does not depend on mu.
inline std::vector<double> sample_weak_limit(double beta, double mu, double x, double alpha, std::size_t n,
                                             std::uint64_t seed, std::size_t shards = 1) {
  const ModelParams p = Scaling2Params{beta, mu, x / mu}.to_model(alpha);
  AbsorptionBatch b = batch_absorption(p, n, seed, shards);
  for (double& v : b.values) v *= mu;
  return std::move(b.values);
}

}  // namespace telegraph
