#include <gtest/gtest.h>

#include "jsim/state_backend.hpp"
#include "jsim/workload.hpp"

using namespace jsim;

namespace {

int scalable_count(const Scenario& s) {
  int n = 0;
  for (const auto& op : s.graph.operators)
    if (op.kind != OperatorKind::source && op.kind != OperatorKind::sink) ++n;
  return n;
}

const OperatorSpec& only_stateful(const Scenario& s) {
  for (const auto& op : s.graph.operators)
    if (op.is_stateful()) return op;
  throw std::runtime_error("no stateful operator");
}

}  // namespace

TEST(Microbenchmark, TargetRates) {
  EXPECT_EQ(microbenchmark(MicroKind::read, 1, 128).graph.target_rate, 50'000);
  EXPECT_EQ(microbenchmark(MicroKind::write, 1, 128).graph.target_rate, 50'000);
  EXPECT_EQ(microbenchmark(MicroKind::update, 1, 128).graph.target_rate, 30'000);
}

TEST(Microbenchmark, WriteAt128HasSmallMemtable) {
  const auto s = microbenchmark(MicroKind::write, 1, 128);
  const auto& e = s.initial_config.at("write");
  const double managed = memory_for_level(s.scheme, e.m);
  EXPECT_EQ(managed, 128.0);
  EXPECT_EQ(split_managed_memory(managed).memtable_mb, 32.0);
}

TEST(Microbenchmark, Shape) {
  for (auto kind : {MicroKind::read, MicroKind::write, MicroKind::update}) {
    for (double mb : kMicroMemorySizes) {
      const auto s = microbenchmark(kind, 8, mb);
      EXPECT_NO_THROW(s.validate());
      EXPECT_EQ(scalable_count(s), 1);
      const auto& op = only_stateful(s);
      EXPECT_EQ(op.total_state_bytes, 1'000'001.0 * 1'000.0);
      EXPECT_EQ(memory_for_level(s.scheme, s.initial_config.at(op.id).m), mb);
      EXPECT_EQ(s.initial_config.at(op.id).p, 8);
    }
  }
  const auto& u = only_stateful(microbenchmark(MicroKind::update, 1, 256));
  EXPECT_EQ(u.reads_per_event, 1);
  EXPECT_EQ(u.writes_per_event, 1);
}

TEST(Microbenchmark, RejectsBadInputs) {
  EXPECT_THROW(microbenchmark(MicroKind::read, 1, 300), Error);
  EXPECT_THROW(microbenchmark(MicroKind::read, 9, 128), Error);
  EXPECT_THROW(micro_kind_from_string("scan"), Error);
}

TEST(NexmarkLike, SmallStateSizes) {
  EXPECT_EQ(only_stateful(nexmark_like("q3")).total_state_bytes, 8 * kMiB);
  EXPECT_EQ(only_stateful(nexmark_like("q5")).total_state_bytes, 10 * kMiB);
}

TEST(NexmarkLike, Q1HasOneStatelessOperator) {
  const auto s = nexmark_like("q1");
  EXPECT_EQ(scalable_count(s), 1);
  for (const auto& op : s.graph.operators)
    if (op.kind != OperatorKind::source && op.kind != OperatorKind::sink)
      EXPECT_EQ(op.kind, OperatorKind::stateless);
}

TEST(NexmarkLike, AllValidWithUnitSinks) {
  for (const char* q : {"q1", "q2", "q3", "q5", "q8", "q11"}) {
    const auto s = nexmark_like(q);
    EXPECT_TRUE(validate_graph(s.graph).empty()) << q;
    EXPECT_NO_THROW(s.validate()) << q;
    for (const auto& [id, e] : s.initial_config.entries) {
      EXPECT_EQ(e.p, 1);
      EXPECT_EQ(e.m, MemoryLevel(0));
    }
  }
}

TEST(NexmarkLike, LargeStateOutgrowsLevelZeroCache) {
  const BackendCalibration cal;
  const double cache = split_managed_memory(158).cache_mb * kMiB;
  for (const char* q : {"q8", "q11"}) {
    const auto& op = only_stateful(nexmark_like(q));
    EXPECT_GE(op.total_state_bytes, 4 * cache) << q;
    EXPECT_LT(cache_hit_rate(cache / kMiB, op.starting_state_bytes(), op.reads_per_event, cal), 0.8) << q;
  }
}

TEST(NexmarkLike, TargetOverrideAndUnknownQuery) {
  EXPECT_EQ(nexmark_like("q5", 123.0).graph.target_rate, 123.0);
  try {
    nexmark_like("q4");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "unknown-scenario");
  }
}
