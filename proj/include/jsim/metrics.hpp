#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jsim/core_model.hpp"

namespace jsim {

struct TracePoint {
  double time = 0.0;
  std::string op;
  int p = 1;
  MemoryLevel m;
  double offered_rate = 0.0;
  double processed_rate = 0.0;
  double output_rate = 0.0;
  double busyness = 0.0;
  std::optional<double> theta;
  std::optional<double> tau;
  bool backpressured = false;
  double total_cores = 0.0;
  double total_memory_mb = 0.0;
};

struct OperatorMetrics {
  double busyness = 0.0;
  double offered_rate = 0.0;
  double processed_rate = 0.0;
  double output_rate = 0.0;
  std::optional<double> theta;
  std::optional<double> tau;
  bool backpressured = false;
};

struct MetricWindow {
  std::map<std::string, OperatorMetrics> ops;
  double window_start = 0.0;
  double window_end = 0.0;

  const OperatorMetrics& at(const std::string& id) const;
};

// Points are assigned to the window by time in [start, end).
MetricWindow aggregate(const std::vector<TracePoint>& points, double start, double end);

struct HistoryEntry {
  Configuration config;  // active while `window` was measured
  MetricWindow window;
};

class DecisionHistory {
 public:
  // Entries must arrive with strictly increasing config timestamps.
  void append(Configuration config, MetricWindow window);
  const std::vector<HistoryEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const HistoryEntry& back() const;

 private:
  std::vector<HistoryEntry> entries_;
};

// Compares the last two entries for `op`.
bool improvement(const DecisionHistory& history, const std::string& op, double hysteresis);

}  // namespace jsim
