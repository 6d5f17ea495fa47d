#include <gtest/gtest.h>

#include <cmath>
#include <deque>

#include "telegraph/analytic.hpp"
#include "telegraph/simulate.hpp"

using namespace telegraph;

namespace {

// Replays fixed ascent, descent and coin outcomes.
struct ForcedDraws {
  std::deque<double> ups, downs;
  std::deque<bool> coins;
  double ascent(double) { return pop(ups); }
  double descent(double) { return pop(downs); }
  bool absorbs(double) {
    const bool c = coins.front();
    coins.pop_front();
    return c;
  }
  static double pop(std::deque<double>& q) {
    const double v = q.front();
    q.pop_front();
    return v;
  }
};
static_assert(DrawSource<ForcedDraws>);

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::IoError;
}

}  // namespace

TEST(ForcedPath, SingleCycle) {
  ForcedDraws d{{0.3}, {2.0}, {true}};
  EXPECT_DOUBLE_EQ(sample_absorption_time(validate(2, 1, 1, 1), d), 1.6);
}

TEST(ForcedPath, ReflectedThenAbsorbed) {
  ForcedDraws d{{0.3, 0.5}, {2.0, 0.6}, {false, true}};
  EXPECT_DOUBLE_EQ(sample_absorption_time(validate(2, 1, 0.5, 1), d), 2.6);
}

TEST(ForcedPath, TraceEvents) {
  ForcedDraws d{{0.3}, {2.0}, {true}};
  const PathTrace t = simulate_path(validate(2, 1, 1, 1), d);
  ASSERT_EQ(t.events.size(), 2u);
  EXPECT_DOUBLE_EQ(t.events[0].time, 0.3);
  EXPECT_DOUBLE_EQ(t.events[0].position, 1.3);
  EXPECT_EQ(t.events[0].kind, EventKind::SwitchToDown);
  EXPECT_DOUBLE_EQ(t.events[1].time, 1.6);
  EXPECT_EQ(t.events[1].position, 0.0);
  EXPECT_EQ(t.events[1].kind, EventKind::HitOriginAbsorbed);
  ASSERT_TRUE(t.absorbed_at.has_value());
  EXPECT_DOUBLE_EQ(*t.absorbed_at, 1.6);
}

TEST(ForcedPath, HorizonTruncates) {
  ForcedDraws d{{0.3}, {2.0}, {true}};
  const PathTrace t = simulate_path(validate(2, 1, 1, 1), d, 1.0);
  ASSERT_EQ(t.events.size(), 1u);
  EXPECT_DOUBLE_EQ(t.events[0].time, 0.3);
  EXPECT_FALSE(t.absorbed_at.has_value());
}

TEST(ForcedPath, InteriorTurnaround) {
  ForcedDraws d{{1.0, 0.5}, {0.4, 5.0}, {true}};
  const PathTrace t = simulate_path(validate(2, 1, 1, 0), d);
  ASSERT_EQ(t.events.size(), 4u);
  EXPECT_EQ(t.events[1].kind, EventKind::SwitchToUp);
  EXPECT_DOUBLE_EQ(t.events[1].position, 0.6);
  EXPECT_DOUBLE_EQ(*t.absorbed_at, 1.0 + 0.4 + 0.5 + 1.1);
}

TEST(RandomPaths, PiecewiseUnitSlopes) {
  const ModelParams p = validate(2, 1, 0.6, 1);
  for (std::uint64_t k = 0; k < 1000; ++k) {
    RngStream rng(123, k);
    const PathTrace t = simulate_path(p, rng);
    double prev_t = 0, prev_x = p.x();
    bool up = true;
    for (const PathEvent& e : t.events) {
      const double slope = (e.position - prev_x) / (e.time - prev_t);
      ASSERT_NEAR(slope, up ? 1.0 : -1.0, 1e-9 * (1 + e.time));
      ASSERT_GE(e.position, 0.0);
      up = e.kind != EventKind::SwitchToDown;
      prev_t = e.time;
      prev_x = e.position;
    }
    ASSERT_EQ(t.events.back().kind, EventKind::HitOriginAbsorbed);
    ASSERT_EQ(*t.absorbed_at, t.events.back().time);
  }
}

TEST(RandomPaths, SameStreamGivesSameTimeAsPath) {
  const ModelParams p = validate(3, 2, 0.9, 0.5);
  for (std::uint64_t k = 0; k < 50; ++k) {
    RngStream a(8, k), b(8, k);
    EXPECT_EQ(sample_absorption_time(p, a), *simulate_path(p, b).absorbed_at);
  }
}

TEST(Batch, MeanMatchesClosedForm) {
  const AbsorptionBatch b = batch_absorption(validate(2, 1, 1, 1), 100000, 2024);
  EXPECT_NEAR(b.stats.mean, 5, 4 * *b.stats.std_error);
  EXPECT_NEAR(*b.stats.std_error, std::sqrt(28.0 / 1e5), 0.002);
}

TEST(Batch, ShardInvariant) {
  const ModelParams p = validate(2, 1, 0.7, 1);
  const AbsorptionBatch one = batch_absorption(p, 8, 7, 1);
  for (std::size_t shards : {2u, 4u, 8u, 16u}) {
    const AbsorptionBatch many = batch_absorption(p, 8, 7, shards);
    EXPECT_EQ(one.values, many.values);
    EXPECT_EQ(one.stats.mean, many.stats.mean);
  }
}

TEST(Batch, SingleValueHasNoVariance) {
  const AbsorptionBatch b = batch_absorption(validate(2, 1, 1, 1), 1, 3);
  EXPECT_FALSE(b.stats.variance.has_value());
  EXPECT_FALSE(b.stats.std_error.has_value());
  EXPECT_EQ(b.stats.mean, b.values[0]);
}

TEST(Batch, Errors) {
  EXPECT_EQ(code_of([] { batch_absorption(validate(2, 1, 1, 1), 0, 3); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { batch_absorption(validate(2, 1, 1, 1), 5, 3, 0); }), ErrorCode::DomainError);
}

TEST(Batch, ZeroStartIsBusyPeriod) {
  const AbsorptionBatch b = batch_absorption(validate(2, 1, 1, 0), 50000, 77);
  EXPECT_NEAR(b.stats.mean, 2, 4 * *b.stats.std_error);
}

TEST(WeakLimit, UnitMuIsPlainDraw) {
  const std::vector<double> w = sample_weak_limit(2, 1, 1, 1, 100, 5);
  EXPECT_EQ(w, batch_absorption(validate(2, 1, 1, 1), 100, 5).values);
}

TEST(WeakLimit, MeanIsMuFree) {
  const std::vector<double> w = sample_weak_limit(2, 100, 1, 1, 100000, 6);
  double sum = 0;
  for (double v : w) sum += v;
  const double mean = sum / w.size();
  EXPECT_NEAR(mean, 5, 4 * std::sqrt(28.0 / 1e5));
}

TEST(Summarize, TwoPass) {
  const SampleStats s = summarize({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(*s.variance, 5.0 / 3.0);
}

TEST(EventKinds, Names) {
  EXPECT_STREQ(to_string(EventKind::SwitchToDown), "switch_down");
  EXPECT_STREQ(to_string(EventKind::SwitchToUp), "switch_up");
  EXPECT_STREQ(to_string(EventKind::HitOriginReflected), "reflected");
  EXPECT_STREQ(to_string(EventKind::HitOriginAbsorbed), "absorbed");
}
