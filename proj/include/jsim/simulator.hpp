#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jsim/ds2.hpp"
#include "jsim/justin.hpp"
#include "jsim/metrics.hpp"
#include "jsim/placement.hpp"
#include "jsim/workload.hpp"

namespace jsim {

enum class PolicyKind { none, ds2, justin };

std::string to_string(PolicyKind policy);
PolicyKind policy_from_string(const std::string& text);

struct SimOptions {
  double dt = 0.5;             // s
  double window = 12.0;        // s
  double stabilization = 6.0;  // s
  double pause = 1.0;          // s
  int provisioning_limit = 16;

  // Durations as run on the real testbed, ten times the desk defaults.
  static SimOptions testbed_scale();
  void validate() const;
};

struct OperatorRates {
  double offered = 0.0;
  double processed = 0.0;
  double output = 0.0;
  double busyness = 0.0;
  bool backpressured = false;
  BackendSample backend;
};

struct SimState {
  double clock = 0.0;
  Configuration config;
  ClusterState cluster;
  double paused_until = 0.0;
  double stabilizing_until = 0.0;
  std::map<std::string, double> state_bytes;  // operator-wide
  std::map<std::string, OperatorRates> rates;
};

// Steady-state rates for one configuration. Sources are throttled by a single
// factor so that no operator is offered more than its capacity.
std::map<std::string, OperatorRates> compute_rates(const Scenario& scenario,
                                                   const Configuration& config,
                                                   const std::map<std::string, double>& state_bytes);

SimState initial_state(const Scenario& scenario, const SimOptions& options);

// Advances one step and returns one trace point per operator, stamped with
// the step's start time.
std::vector<TracePoint> step(SimState& state, const Scenario& scenario, double dt);

void apply_configuration(SimState& state, const Scenario& scenario, const Configuration& next,
                         double pause, double stabilization);

struct Reconfiguration {
  double time = 0.0;
  Configuration from;
  Configuration to;
};

struct RunResult {
  std::string label;
  PolicyKind policy = PolicyKind::none;
  std::uint64_t seed = 0;
  std::vector<TracePoint> trace;
  std::vector<Configuration> configurations;  // C^0 .. C^T, one per enacted change
  std::vector<Reconfiguration> reconfigurations;
  DecisionHistory history;
  ClusterState final_cluster;
  std::optional<std::string> error;

  int reconfiguration_count() const { return static_cast<int>(reconfigurations.size()); }
  const Configuration& final_config() const { return configurations.back(); }
  double convergence_time() const {
    return reconfigurations.empty() ? 0.0 : reconfigurations.back().time;
  }
};

RunResult run(const Scenario& scenario, PolicyKind policy, const PolicyParams& params,
              std::uint64_t seed, const SimOptions& options = {});

struct RunSummary {
  ResourceTotals resources;
  double achieved_rate = 0.0;  // events/s leaving the sources, final window mean
  double target_rate = 0.0;
  int tm_count = 0;
};

RunSummary summarize(const RunResult& result, const Scenario& scenario, const SimOptions& options);

}  // namespace jsim
