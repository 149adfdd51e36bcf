#include "jsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTimeEps = 1e-9;
constexpr double kSaturation = 1e-9;

}  // namespace

std::string to_string(PolicyKind policy) {
  switch (policy) {
    case PolicyKind::none: return "none";
    case PolicyKind::ds2: return "ds2";
    case PolicyKind::justin: return "justin";
  }
  return "unknown";
}

PolicyKind policy_from_string(const std::string& text) {
  if (text == "none") return PolicyKind::none;
  if (text == "ds2") return PolicyKind::ds2;
  if (text == "justin") return PolicyKind::justin;
  throw Error("config", "unknown policy '" + text + "'");
}

SimOptions SimOptions::testbed_scale() { return {5.0, 120.0, 60.0, 10.0, 16}; }

void SimOptions::validate() const {
  if (!(dt > 0.0)) throw Error("config", "dt must be positive");
  if (!(window >= dt)) throw Error("config", "window must be at least one step");
  if (!(stabilization >= 0.0 && pause >= 0.0)) throw Error("config", "durations must be non-negative");
  if (provisioning_limit < 1) throw Error("config", "provisioning limit must be at least 1");
}

std::map<std::string, OperatorRates> compute_rates(const Scenario& scenario,
                                                   const Configuration& config,
                                                   const std::map<std::string, double>& state_bytes) {
  const QueryGraph& g = scenario.graph;
  const auto order = topological_order(g);

  std::map<std::string, OperatorRates> rates;
  std::map<std::string, double> capacity;
  for (const auto& id : order) {
    const auto& op = g.op(id);
    const auto& e = config.at(id);
    auto it = state_bytes.find(id);
    const double bytes = it == state_bytes.end() ? op.starting_state_bytes() : it->second;
    rates[id].backend = evaluate_backend(op, e.m, e.p, bytes, scenario.scheme, scenario.calibration);
    const double service = rates[id].backend.service_time;
    capacity[id] = service > 0.0 ? e.p / service : kInf;
  }

  // Unthrottled demand fixes the throttle; rates are linear in it.
  std::map<std::string, double> demand;
  double throttle = 1.0;
  for (const auto& id : order) {
    const auto& op = g.op(id);
    double offered = 0.0;
    if (op.kind == OperatorKind::source) {
      offered = g.target_rate;
    } else {
      for (const auto& up : g.upstream(id)) offered += demand.at(up);
    }
    demand[id] = offered * op.selectivity;
    if (offered > 0.0 && capacity[id] < kInf) throttle = std::min(throttle, capacity[id] / offered);
  }

  std::map<std::string, double> output;
  for (const auto& id : order) {
    const auto& op = g.op(id);
    auto& r = rates[id];
    if (op.kind == OperatorKind::source) {
      r.offered = g.target_rate;
      r.processed = throttle * g.target_rate;
    } else {
      for (const auto& up : g.upstream(id)) r.offered += output[up];
      r.processed = r.offered;
    }
    const double cap = capacity[id];
    if (cap < kInf) {
      if (r.offered >= cap * (1.0 - kSaturation) && r.offered > 0.0) {
        r.processed = cap;
        r.busyness = 1.0;
      } else {
        r.busyness = r.processed / cap;
      }
    }
    output[id] = r.processed * op.selectivity;
    r.output = output[id];
  }

  for (const auto& id : order) {
    if (rates[id].busyness < 1.0) continue;
    for (const auto& up : g.upstream(id)) rates[up].backpressured = true;
  }
  return rates;
}

SimState initial_state(const Scenario& scenario, const SimOptions& options) {
  SimState s;
  s.config = scenario.initial_config;
  s.cluster.provisioning_limit = options.provisioning_limit;
  s.cluster = pack(demands_for(s.config, scenario.scheme), scenario.tm_spec, s.cluster);
  for (const auto& op : scenario.graph.operators) s.state_bytes[op.id] = op.starting_state_bytes();
  return s;
}

std::vector<TracePoint> step(SimState& state, const Scenario& scenario, double dt) {
  if (!(dt > 0.0)) throw Error("config", "dt must be positive");
  state.rates = compute_rates(scenario, state.config, state.state_bytes);
  if (state.clock < state.paused_until - kTimeEps) {
    for (auto& [id, r] : state.rates) {
      r.offered = r.processed = r.output = r.busyness = 0.0;
      r.backpressured = false;
    }
  }

  const ResourceTotals totals =
      total_resources(state.config, scenario.graph, scenario.scheme, scenario.tm_spec, state.cluster);
  std::vector<TracePoint> points;
  points.reserve(scenario.graph.operators.size());
  for (const auto& op : scenario.graph.operators) {
    const auto& r = state.rates.at(op.id);
    const auto& e = state.config.at(op.id);
    points.push_back({state.clock, op.id, e.p, e.m, r.offered, r.processed, r.output, r.busyness,
                      r.backend.theta, r.backend.tau, r.backpressured, totals.cores,
                      totals.memory_mb});
    if (op.state_bytes_per_event > 0.0) {
      double& bytes = state.state_bytes[op.id];
      bytes = std::min(op.total_state_bytes, bytes + op.state_bytes_per_event * r.processed * dt);
    }
  }
  state.clock += dt;
  return points;
}

void apply_configuration(SimState& state, const Scenario& scenario, const Configuration& next,
                         double pause, double stabilization) {
  if (next.entries.size() != scenario.graph.operators.size())
    throw Error("config", "configuration does not cover the graph");
  for (const auto& op : scenario.graph.operators) {
    const auto& e = next.at(op.id);
    if (e.p < 1) throw Error("config", "parallelism below 1 for '" + op.id + "'");
    if (op.is_stateful() && !e.m) throw Error("model", "stateful '" + op.id + "' lost its memory");
  }
  try {
    state.cluster = pack(demands_for(next, scenario.scheme), scenario.tm_spec, state.cluster);
  } catch (const Error& e) {
    throw Error("reconfiguration-failed", e.what());
  }
  state.config = next;
  state.paused_until = state.clock + pause;
  state.stabilizing_until = state.clock + pause + stabilization;
}

RunResult run(const Scenario& scenario, PolicyKind policy, const PolicyParams& params,
              std::uint64_t seed, const SimOptions& options) {
  scenario.validate();
  options.validate();
  params.validate();
  PolicyParams effective = params;
  if (policy == PolicyKind::ds2) effective.justin_enabled = false;

  RunResult result;
  result.label = scenario.label;
  result.policy = policy;
  result.seed = seed;

  SimState state;
  try {
    state = initial_state(scenario, options);
  } catch (const Error& e) {
    result.error = e.what();
    result.configurations.push_back(scenario.initial_config);
    return result;
  }
  result.configurations.push_back(state.config);

  const auto steps = static_cast<long>(std::llround(scenario.horizon / options.dt));
  std::vector<TracePoint> window_points;
  double window_start = 0.0;
  for (long i = 0; i < steps; ++i) {
    const bool measuring = state.clock >= state.stabilizing_until - kTimeEps;
    auto points = step(state, scenario, options.dt);
    state.clock = static_cast<double>(i + 1) * options.dt;
    if (measuring) window_points.insert(window_points.end(), points.begin(), points.end());
    result.trace.insert(result.trace.end(), points.begin(), points.end());

    if (!measuring) {
      window_points.clear();
      window_start = state.stabilizing_until;
      continue;
    }
    if (state.clock - window_start < options.window - kTimeEps) continue;

    // Bounds come from the sampled times so float drift cannot drop a sample.
    MetricWindow window = aggregate(window_points, window_points.front().time,
                                    window_points.back().time + options.dt / 2);
    window.window_end = state.clock;
    window_points.clear();
    window_start = state.clock;
    if (policy == PolicyKind::none) continue;

    std::optional<Configuration> next;
    try {
      next = decide(window, scenario.graph, state.config, result.history, effective);
    } catch (const Error& e) {
      result.error = e.what();
      break;
    }
    if (!next) continue;
    if (next->same_allocation(state.config)) {
      state.config = *next;
      continue;
    }
    Configuration from = state.config;
    try {
      apply_configuration(state, scenario, *next, options.pause, options.stabilization);
    } catch (const Error& e) {
      result.error = e.what();
      break;
    }
    result.reconfigurations.push_back({state.clock, from, state.config});
    result.configurations.push_back(state.config);
  }
  result.final_cluster = state.cluster;
  return result;
}

RunSummary summarize(const RunResult& result, const Scenario& scenario, const SimOptions& options) {
  RunSummary s;
  s.target_rate = scenario.graph.target_rate * static_cast<double>(scenario.graph.sources.size());
  s.resources = configuration_resources(result.final_config(), scenario.graph, scenario.scheme,
                                        scenario.tm_spec);
  s.tm_count = result.final_cluster.tm_count();
  if (result.trace.empty()) return s;

  const double end = result.trace.back().time + options.dt;
  const double start = end - options.window;
  std::map<double, double> per_step;
  for (const auto& pt : result.trace) {
    if (pt.time < start - kTimeEps) continue;
    if (scenario.graph.op(pt.op).kind == OperatorKind::source) per_step[pt.time] += pt.processed_rate;
  }
  double sum = 0.0;
  for (const auto& [t, rate] : per_step) sum += rate;
  s.achieved_rate = per_step.empty() ? 0.0 : sum / static_cast<double>(per_step.size());
  return s;
}

}  // namespace jsim
