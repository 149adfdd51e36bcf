#include "jsim/ds2.hpp"

#include <cmath>

namespace jsim {

void PolicyParams::validate() const {
  if (!(busy_low > 0.0 && busy_low < busy_high && busy_high <= 1.0))
    throw Error("config", "busyness band must satisfy 0 < low < high <= 1");
  if (!(delta_theta > 0.0 && delta_theta < 1.0)) throw Error("config", "delta_theta must be in (0,1)");
  if (!(delta_tau > 0.0)) throw Error("config", "delta_tau must be positive");
  if (max_level < 1) throw Error("config", "max_level must be at least 1");
  if (!(hysteresis >= 0.0 && hysteresis < 1.0)) throw Error("config", "hysteresis must be in [0,1)");
}

namespace {

bool scalable(const OperatorSpec& op) {
  return op.kind != OperatorKind::source && op.kind != OperatorKind::sink;
}

}  // namespace

bool should_trigger(const MetricWindow& window, const QueryGraph& graph,
                    const Configuration& config, const PolicyParams& params) {
  for (const auto& op : graph.operators) {
    if (!scalable(op)) continue;
    const auto& m = window.at(op.id);
    if (m.busyness > params.busy_high) {
      for (const auto& up : graph.upstream(op.id))
        if (window.at(up).backpressured) return true;
    }
    if (m.busyness < params.busy_low && config.at(op.id).p > 1) return true;
  }
  return false;
}

Configuration ds2_scale(const MetricWindow& window, const QueryGraph& graph,
                        const Configuration& config, const PolicyParams& params) {
  Configuration out = config;
  out.timestamp = config.timestamp + 1;

  std::map<std::string, double> required_output;
  for (const auto& id : topological_order(graph)) {
    const auto& op = graph.op(id);
    const auto& m = window.at(id);

    double required = 0.0;
    if (op.kind == OperatorKind::source) {
      required = graph.target_rate;
    } else {
      for (const auto& up : graph.upstream(id)) required += required_output.at(up);
    }
    const double selectivity =
        m.processed_rate > 0.0 ? m.output_rate / m.processed_rate : op.selectivity;
    required_output[id] = required * selectivity;

    if (!scalable(op)) continue;
    const int p = config.at(id).p;
    if (m.busyness <= 0.0) {
      if (m.offered_rate > 0.0 || m.processed_rate > 0.0)
        throw Error("undefined-true-rate", "'" + id + "' has load but zero busyness");
      continue;
    }
    const double true_rate = m.processed_rate / (p * m.busyness);
    const double exact = required / (true_rate * params.busy_high);
    // The epsilon absorbs rounding in rate ratios that are exact in theory.
    out.entries.at(id).p = std::max(1, static_cast<int>(std::ceil(exact - 1e-9)));
  }
  return out;
}

}  // namespace jsim
