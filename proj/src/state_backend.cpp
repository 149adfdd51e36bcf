#include "jsim/state_backend.hpp"

#include <algorithm>
#include <cmath>

namespace jsim {

void BackendCalibration::validate() const {
  if (!(mem_hit_latency > 0.0 && disk_miss_latency > 0.0 && memtable_write_latency > 0.0))
    throw Error("config", "backend latencies must be positive");
  if (!(disk_miss_latency > mem_hit_latency))
    throw Error("config", "disk miss latency must exceed the memory hit latency");
  if (!(working_set_overhead >= 1.0)) throw Error("config", "working set overhead must be >= 1");
  if (!(small_memtable_write_penalty > 0.0)) throw Error("config", "write penalty must be positive");
}

MemorySplit split_managed_memory(double total_mb) {
  if (!(total_mb >= 64.0))
    throw Error("insufficient-memory", "managed memory below 64 MB cannot host a backend");
  // 2 * pow2 < total keeps the comparison exact for integral totals.
  double pow2 = 1.0;
  while (4.0 * pow2 < total_mb) pow2 *= 2.0;
  const double memtable = std::min(64.0, pow2);
  return {memtable, total_mb - memtable};
}

double cache_hit_rate(double cache_mb, double per_task_state_bytes, double reads_per_event,
                      const BackendCalibration& cal) {
  if (reads_per_event <= 0.0) return 1.0;
  const double demand = cal.working_set_overhead * per_task_state_bytes;
  if (demand <= 0.0) return 1.0;
  return std::clamp(cache_mb * kMiB / demand, 0.0, 1.0);
}

double state_access_latency(double hit_rate, const MemorySplit& split, double reads_per_event,
                            double writes_per_event, const BackendCalibration& cal) {
  const double read =
      reads_per_event * (hit_rate * cal.mem_hit_latency + (1.0 - hit_rate) * cal.disk_miss_latency);
  const double penalty = split.memtable_mb < 64.0 ? cal.small_memtable_write_penalty : 1.0;
  return read + writes_per_event * cal.memtable_write_latency * penalty;
}

BackendSample evaluate_backend(const OperatorSpec& op, const MemoryLevel& level, int parallelism,
                               double state_bytes, const MemoryLevelScheme& scheme,
                               const BackendCalibration& cal) {
  if (!op.is_stateful()) return {op.cpu_cost_per_event, std::nullopt, std::nullopt};
  if (!level) throw Error("model", "stateful operator '" + op.id + "' has no managed memory");
  if (parallelism < 1) throw Error("model", "parallelism must be at least 1");
  const MemorySplit split = split_managed_memory(memory_for_level(scheme, level));
  const double theta =
      cache_hit_rate(split.cache_mb, state_bytes / parallelism, op.reads_per_event, cal);
  const double tau =
      state_access_latency(theta, split, op.reads_per_event, op.writes_per_event, cal);
  return {op.cpu_cost_per_event + tau, theta, tau};
}

double per_event_service_time(const OperatorSpec& op, const MemoryLevel& level, int parallelism,
                              const MemoryLevelScheme& scheme, const BackendCalibration& cal) {
  return evaluate_backend(op, level, parallelism, op.total_state_bytes, scheme, cal).service_time;
}

}  // namespace jsim
