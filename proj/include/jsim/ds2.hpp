#pragma once

#include "jsim/core_model.hpp"
#include "jsim/metrics.hpp"

namespace jsim {

struct PolicyParams {
  double busy_high = 0.8;
  double busy_low = 0.2;
  double delta_theta = 0.8;
  double delta_tau = 1e-3;  // s
  int max_level = 3;
  double hysteresis = 0.05;
  bool justin_enabled = true;

  void validate() const;
};

// Sources and sinks never trigger. Scale-in needs p > 1 to have any effect.
bool should_trigger(const MetricWindow& window, const QueryGraph& graph,
                    const Configuration& config, const PolicyParams& params);

// Parallelism only; memory levels and v flags are copied through.
Configuration ds2_scale(const MetricWindow& window, const QueryGraph& graph,
                        const Configuration& config, const PolicyParams& params);

}  // namespace jsim
