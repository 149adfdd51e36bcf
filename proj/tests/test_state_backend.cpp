#include <gtest/gtest.h>

#include "jsim/state_backend.hpp"

using namespace jsim;

namespace {

BackendCalibration alpha2() {
  BackendCalibration c;
  c.working_set_overhead = 2.0;
  return c;
}

}  // namespace

TEST(SplitManagedMemory, ReferencePoints) {
  auto s = split_managed_memory(128);
  EXPECT_EQ(s.memtable_mb, 32.0);
  EXPECT_EQ(s.cache_mb, 96.0);
  s = split_managed_memory(256);
  EXPECT_EQ(s.memtable_mb, 64.0);
  EXPECT_EQ(s.cache_mb, 192.0);
  s = split_managed_memory(512);
  EXPECT_EQ(s.memtable_mb, 64.0);
  EXPECT_EQ(s.cache_mb, 448.0);
}

TEST(SplitManagedMemory, DefaultLevelZero) {
  const auto s = split_managed_memory(158);
  EXPECT_EQ(s.memtable_mb, 64.0);
  EXPECT_EQ(s.cache_mb, 94.0);
}

TEST(SplitManagedMemory, BoundaryAndError) {
  EXPECT_EQ(split_managed_memory(64).memtable_mb, 16.0);
  EXPECT_EQ(split_managed_memory(129).memtable_mb, 64.0);
  try {
    split_managed_memory(63);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "insufficient-memory");
  }
}

TEST(CacheHitRate, ClosedForm) {
  EXPECT_DOUBLE_EQ(cache_hit_rate(96, 960 * kMiB, 1, alpha2()), 0.05);
  EXPECT_EQ(cache_hit_rate(1000, 100 * kMiB, 1, alpha2()), 1.0);
  EXPECT_EQ(cache_hit_rate(1, 100 * kMiB, 0, alpha2()), 1.0);
}

TEST(StateAccessLatency, Endpoints) {
  const BackendCalibration c;
  const MemorySplit big{64, 192};
  EXPECT_DOUBLE_EQ(state_access_latency(1, big, 1, 0, c), c.mem_hit_latency);
  EXPECT_DOUBLE_EQ(state_access_latency(0, big, 1, 0, c), c.disk_miss_latency);
  EXPECT_DOUBLE_EQ(state_access_latency(0.5, big, 1, 1, c),
                   0.5 * 1e-6 + 0.5 * 200e-6 + 2e-6);
}

TEST(StateAccessLatency, SmallMemtablePenalty) {
  const BackendCalibration c;
  EXPECT_DOUBLE_EQ(state_access_latency(1, {32, 96}, 0, 1, c), 2e-6 * 1.3);
}

TEST(ServiceTime, StatelessIsCpuOnly) {
  const OperatorSpec op{.id = "map", .kind = OperatorKind::stateless, .cpu_cost_per_event = 3e-6};
  EXPECT_EQ(per_event_service_time(op, std::nullopt, 4, {}, {}), 3e-6);
  EXPECT_EQ(per_event_service_time(op, 2, 4, {}, {}), 3e-6);
}

TEST(ServiceTime, FullCacheAddsHitLatencyPerRead) {
  const OperatorSpec op{.id = "agg", .kind = OperatorKind::stateful, .cpu_cost_per_event = 5e-6,
                        .reads_per_event = 2, .total_state_bytes = kMiB};
  EXPECT_DOUBLE_EQ(per_event_service_time(op, 0, 1, {}, {}), 5e-6 + 2 * 1e-6);
}

TEST(ServiceTime, ReadOperatorWithOneGigabyte) {
  // 128 MB managed: 96 MB cache against 2 x 1024 MB of demand.
  const OperatorSpec op{.id = "read", .kind = OperatorKind::stateful, .cpu_cost_per_event = 5e-6,
                        .reads_per_event = 1, .total_state_bytes = 1024 * kMiB};
  const MemoryLevelScheme scheme{128, 4};
  const double theta = 96.0 / 2048.0;
  const double expected = 5e-6 + theta * 1e-6 + (1 - theta) * 200e-6;
  EXPECT_DOUBLE_EQ(per_event_service_time(op, 0, 1, scheme, alpha2()), expected);
  EXPECT_NEAR(expected, 195.7e-6, 0.1e-6);
}

TEST(ServiceTime, StatefulWithoutMemoryIsModelError) {
  const OperatorSpec op{.id = "agg", .kind = OperatorKind::stateful, .reads_per_event = 1};
  try {
    per_event_service_time(op, std::nullopt, 1, {}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "model");
  }
}

TEST(Calibration, Validation) {
  BackendCalibration c;
  EXPECT_NO_THROW(c.validate());
  c.disk_miss_latency = 0.5e-6;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.working_set_overhead = 0.5;
  EXPECT_THROW(c.validate(), Error);
}
