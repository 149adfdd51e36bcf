#pragma once

#include "jsim/core_model.hpp"

namespace jsim {

struct MemorySplit {
  double memtable_mb = 0.0;
  double cache_mb = 0.0;
};

struct BackendCalibration {
  double mem_hit_latency = 1e-6;        // s
  double disk_miss_latency = 200e-6;    // s
  double memtable_write_latency = 2e-6; // s, full-size MemTable
  double small_memtable_write_penalty = 1.3;
  double working_set_overhead = 4.0;    // alpha

  void validate() const;
};

// Managed memory is split as MemTable = min(64, largest power of two strictly
// below total/2); the cache takes the rest. Totals are whole MB.
MemorySplit split_managed_memory(double total_mb);

double cache_hit_rate(double cache_mb, double per_task_state_bytes, double reads_per_event,
                      const BackendCalibration& cal);

double state_access_latency(double hit_rate, const MemorySplit& split, double reads_per_event,
                            double writes_per_event, const BackendCalibration& cal);

// Model outputs for one operator at a given allocation.
struct BackendSample {
  double service_time = 0.0;     // s per event, cpu + state access
  std::optional<double> theta;   // absent for operators without a backend
  std::optional<double> tau;     // s per event spent in state access
};

// state_bytes is the operator-wide state, split evenly over `parallelism` tasks.
BackendSample evaluate_backend(const OperatorSpec& op, const MemoryLevel& level, int parallelism,
                               double state_bytes, const MemoryLevelScheme& scheme,
                               const BackendCalibration& cal);

// Service time with the operator's full state partitioned over `parallelism` tasks.
double per_event_service_time(const OperatorSpec& op, const MemoryLevel& level, int parallelism,
                              const MemoryLevelScheme& scheme, const BackendCalibration& cal);

}  // namespace jsim
