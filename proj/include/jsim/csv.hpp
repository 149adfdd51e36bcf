#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "jsim/metrics.hpp"
#include "jsim/placement.hpp"

namespace jsim {

// Shortest round-trip-safe text for a double; identical across runs.
std::string format_number(double value);
std::string format_optional(const std::optional<double>& value);

inline constexpr const char* kTraceHeader =
    "time_s,operator,parallelism,mem_level,offered_rate,processed_rate,busyness,"
    "cache_hit_rate,access_latency_s,backpressured,total_cores,total_memory_mb";

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

// "op=p:level;..." in operator-id order.
std::string describe_configuration(const Configuration& config);
// "tasks/managed_mb" per TM, '|' separated.
std::string describe_occupancy(const ClusterState& cluster);

}  // namespace jsim
