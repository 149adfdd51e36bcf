#include <gtest/gtest.h>

#include "jsim/metrics.hpp"

using namespace jsim;

namespace {

TracePoint point(double t, double busy, bool bp = false, std::optional<double> theta = 0.5) {
  TracePoint p;
  p.time = t;
  p.op = "op";
  p.busyness = busy;
  p.processed_rate = 100 * busy;
  p.output_rate = 50 * busy;
  p.theta = theta;
  p.tau = theta ? std::optional<double>(1e-4) : std::nullopt;
  p.backpressured = bp;
  return p;
}

MetricWindow with_theta_tau(double theta, double tau) {
  MetricWindow w;
  w.window_end = 1;
  w.ops["op"].theta = theta;
  w.ops["op"].tau = tau;
  return w;
}

DecisionHistory history(const MetricWindow& a, const MetricWindow& b) {
  DecisionHistory h;
  Configuration c0, c1;
  c1.timestamp = 1;
  h.append(c0, a);
  h.append(c1, b);
  return h;
}

}  // namespace

TEST(Aggregate, ConstantInputs) {
  const auto w = aggregate({point(0, 0.5), point(1, 0.5), point(2, 0.5)}, 0, 3);
  EXPECT_DOUBLE_EQ(w.at("op").busyness, 0.5);
  EXPECT_DOUBLE_EQ(w.at("op").processed_rate, 50);
  EXPECT_DOUBLE_EQ(*w.at("op").theta, 0.5);
}

TEST(Aggregate, MeanOfBusyness) {
  EXPECT_DOUBLE_EQ(aggregate({point(0, 0.6), point(1, 1.0)}, 0, 2).at("op").busyness, 0.8);
}

TEST(Aggregate, BackpressureIsLogicalOr) {
  EXPECT_TRUE(aggregate({point(0, 0.6), point(1, 1.0, true)}, 0, 2).at("op").backpressured);
  EXPECT_FALSE(aggregate({point(0, 0.6), point(1, 1.0)}, 0, 2).at("op").backpressured);
}

TEST(Aggregate, HalfOpenWindow) {
  const auto w = aggregate({point(0, 0.2), point(1, 0.4), point(2, 1.0)}, 0, 2);
  EXPECT_DOUBLE_EQ(w.at("op").busyness, 0.3);
}

TEST(Aggregate, StatelessHasNoTheta) {
  const auto w = aggregate({point(0, 0.5, false, std::nullopt)}, 0, 1);
  EXPECT_FALSE(w.at("op").theta.has_value());
  EXPECT_FALSE(w.at("op").tau.has_value());
}

TEST(Aggregate, EmptyWindowIsError) {
  EXPECT_THROW(aggregate({}, 0, 1), Error);
  EXPECT_THROW(aggregate({point(5, 0.5)}, 0, 1), Error);
  EXPECT_THROW(aggregate({point(0, 0.5)}, 1, 1), Error);
}

TEST(Improvement, StrictImprovement) {
  EXPECT_TRUE(improvement(history(with_theta_tau(0.5, 1e-3), with_theta_tau(0.7, 1e-3)), "op", 0));
}

TEST(Improvement, NoChangeIsNotImprovement) {
  EXPECT_FALSE(improvement(history(with_theta_tau(0.5, 1e-3), with_theta_tau(0.5, 1e-3)), "op", 0));
}

TEST(Improvement, BelowHysteresis) {
  // 0.52 < 0.50 x 1.05
  const auto h = history(with_theta_tau(0.5, 1e-3), with_theta_tau(0.52, 1e-3));
  EXPECT_FALSE(improvement(h, "op", 0.05));
  EXPECT_TRUE(improvement(h, "op", 0.0));
}

TEST(Improvement, LatencyAloneCounts) {
  EXPECT_TRUE(improvement(history(with_theta_tau(1, 1e-3), with_theta_tau(1, 0.5e-3)), "op", 0.05));
}

TEST(Improvement, Errors) {
  DecisionHistory one;
  one.append(Configuration{}, with_theta_tau(0.5, 1e-3));
  EXPECT_THROW(improvement(one, "op", 0), Error);
  EXPECT_THROW(improvement(history(with_theta_tau(0.5, 1), with_theta_tau(0.6, 1)), "other", 0), Error);
}

TEST(DecisionHistory, TimestampsStrictlyIncrease) {
  DecisionHistory h;
  h.append(Configuration{}, MetricWindow{});
  EXPECT_THROW(h.append(Configuration{}, MetricWindow{}), Error);
}
