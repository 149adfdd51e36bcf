#include <gtest/gtest.h>

#include "jsim/ds2.hpp"
#include "policy_fixtures.hpp"

using namespace jsim;
using namespace fixtures;

TEST(ShouldTrigger, QuietBand) {
  const auto g = chain(50000);
  EXPECT_FALSE(should_trigger(window(metric(0.5, 1000)), g, config(2, 0), {}));
  EXPECT_FALSE(should_trigger(window(metric(0.2, 1000)), g, config(2, 0), {}));
  EXPECT_FALSE(should_trigger(window(metric(0.8, 1000), true), g, config(2, 0), {}));
}

TEST(ShouldTrigger, BusyWithBackpressure) {
  EXPECT_TRUE(should_trigger(window(metric(0.95, 1000), true), chain(50000), config(1, 0), {}));
}

TEST(ShouldTrigger, BusyWithoutBackpressure) {
  EXPECT_FALSE(should_trigger(window(metric(0.95, 1000), false), chain(50000), config(1, 0), {}));
}

TEST(ShouldTrigger, ScaleInNeedsRoomToShrink) {
  const auto g = chain(50000);
  EXPECT_TRUE(should_trigger(window(metric(0.1, 1000)), g, config(3, 0), {}));
  EXPECT_FALSE(should_trigger(window(metric(0.1, 1000)), g, config(1, 0), {}));
}

TEST(ShouldTrigger, SinksAndSourcesIgnored) {
  auto w = window(metric(0.5, 1000));
  w.ops["sink"].busyness = 0.99;
  w.ops["op"].backpressured = true;
  w.ops["source"].busyness = 0.0;
  EXPECT_FALSE(should_trigger(w, chain(50000), config(2, 0), {}));
}

TEST(Ds2Scale, ClosedForm) {
  // true rate 10,000 / 0.8 = 12,500; 50,000 / (12,500 x 0.8) = 5
  const auto next = ds2_scale(window(metric(0.8, 10000), true), chain(50000), config(1, 0), {});
  EXPECT_EQ(next.at("op").p, 5);
  EXPECT_EQ(next.timestamp, 1);
}

TEST(Ds2Scale, FixedPoint) {
  const auto next = ds2_scale(window(metric(0.8, 50000)), chain(50000), config(5, 0), {});
  EXPECT_EQ(next.at("op").p, 5);
}

TEST(Ds2Scale, MemoryAndFlagsPassThrough) {
  const auto next = ds2_scale(window(metric(1.0, 10000), true), chain(50000), config(1, 2, true), {});
  EXPECT_EQ(next.at("op").m, MemoryLevel(2));
  EXPECT_TRUE(next.at("op").v);
  EXPECT_EQ(next.at("sink"), config(1, 2).at("sink"));
}

TEST(Ds2Scale, SelectivityPropagates) {
  QueryGraph g;
  g.operators = {{.id = "source", .kind = OperatorKind::source},
                 {.id = "flatmap", .kind = OperatorKind::stateless, .cpu_cost_per_event = 1e-6, .selectivity = 2},
                 {.id = "count", .kind = OperatorKind::stateless, .cpu_cost_per_event = 1e-6},
                 {.id = "sink", .kind = OperatorKind::sink, .selectivity = 0}};
  g.edges = {{"source", "flatmap"}, {"flatmap", "count"}, {"count", "sink"}};
  g.sources = {"source"};
  g.target_rate = 10000;

  Configuration c;
  for (const auto& op : g.operators) c.entries[op.id] = {1, std::nullopt, false};
  MetricWindow w;
  w.ops["source"] = metric(0, 5000);
  w.ops["flatmap"] = metric(0.5, 5000, 2.0);
  w.ops["count"] = metric(1.0, 10000, 1.0);
  w.ops["sink"] = metric(0.1, 10000, 0.0);
  const auto next = ds2_scale(w, g, c, {});
  // flatmap: 10,000 / (10,000 x 0.8) -> 2; count: 20,000 / (10,000 x 0.8) -> 3
  EXPECT_EQ(next.at("flatmap").p, 2);
  EXPECT_EQ(next.at("count").p, 3);
  EXPECT_EQ(next.at("sink").p, 1);
  EXPECT_EQ(next.at("source").p, 1);
}

TEST(Ds2Scale, ScaleInUsesSameFormula) {
  const auto next = ds2_scale(window(metric(0.1, 50000)), chain(50000), config(40, 0), {});
  // true rate 50,000 / (40 x 0.1) = 12,500 -> 5 tasks
  EXPECT_EQ(next.at("op").p, 5);
}

TEST(Ds2Scale, ZeroBusynessWithLoadIsError) {
  try {
    ds2_scale(window(metric(0.0, 1000)), chain(50000), config(1, 0), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "undefined-true-rate");
  }
}

TEST(PolicyParams, Validation) {
  PolicyParams p;
  EXPECT_NO_THROW(p.validate());
  p.busy_low = 0.9;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.delta_theta = 1.0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.delta_tau = 0;
  EXPECT_THROW(p.validate(), Error);
}
