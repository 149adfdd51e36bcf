#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jsim {

// Base class for every error raised by the library. The kind string is a
// stable, machine-readable tag; what() carries the human diagnostic.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

enum class OperatorKind { source, sink, stateless, stateful };

std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& text);

constexpr double kMiB = 1024.0 * 1024.0;

struct OperatorSpec {
  std::string id;
  OperatorKind kind = OperatorKind::stateless;
  double cpu_cost_per_event = 0.0;  // seconds
  double selectivity = 1.0;
  double reads_per_event = 0.0;
  double writes_per_event = 0.0;
  double total_state_bytes = 0.0;
  // State at t = 0; negative means "start at total_state_bytes".
  double initial_state_bytes = -1.0;
  // Growth per processed event, capped at total_state_bytes.
  double state_bytes_per_event = 0.0;

  bool is_stateful() const { return kind == OperatorKind::stateful; }
  double starting_state_bytes() const {
    return initial_state_bytes < 0.0 ? total_state_bytes : initial_state_bytes;
  }
};

struct QueryGraph {
  std::vector<OperatorSpec> operators;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> sources;
  double target_rate = 0.0;  // events/second per source

  const OperatorSpec& op(const std::string& id) const;
  bool contains(const std::string& id) const;
  std::vector<std::string> upstream(const std::string& id) const;
  std::vector<std::string> downstream(const std::string& id) const;
};

// Kahn order, ties broken by declaration order. Throws on a cycle.
std::vector<std::string> topological_order(const QueryGraph& graph);

struct GraphIssue {
  std::string kind;  // "cycle", "orphan", "source-incoming", ...
  std::string message;
};

// Empty result means the graph is valid.
std::vector<GraphIssue> validate_graph(const QueryGraph& graph);

// nullopt stands for the "no managed memory" level.
using MemoryLevel = std::optional<int>;

std::string level_to_string(const MemoryLevel& level);

struct ConfigEntry {
  int p = 1;
  MemoryLevel m = 0;
  bool v = false;

  bool same_allocation(const ConfigEntry& o) const { return p == o.p && m == o.m; }
  bool operator==(const ConfigEntry&) const = default;
};

struct Configuration {
  std::map<std::string, ConfigEntry> entries;
  std::int64_t timestamp = 0;

  const ConfigEntry& at(const std::string& id) const;
  // Equal p and m for every operator; v and timestamp are ignored.
  bool same_allocation(const Configuration& o) const;
  bool operator==(const Configuration&) const = default;
};

struct TaskManagerSpec {
  int cores = 4;
  double total_memory_mb = 2048.0;
  int slots = 4;
  double managed_memory_budget_mb = 632.0;

  void validate() const;
};

struct MemoryLevelScheme {
  double base_mb = 158.0;
  int max_level = 3;

  void validate() const;
};

double memory_for_level(const MemoryLevelScheme& scheme, const MemoryLevel& level);

// Memory of one slot that is not managed memory: the TM total split evenly
// across slots, minus the base managed share.
double non_managed_slot_mb(const MemoryLevelScheme& scheme, const TaskManagerSpec& tm);

struct ResourceTotals {
  double cores = 0.0;
  double memory_mb = 0.0;
  bool operator==(const ResourceTotals&) const = default;
};

struct ClusterState;

// Sources are excluded, every other task counts one core plus its slot memory.
// Throws if the placement does not hold every counted task.
ResourceTotals total_resources(const Configuration& config, const QueryGraph& graph,
                               const MemoryLevelScheme& scheme, const TaskManagerSpec& tm,
                               const ClusterState& placement);

// Same arithmetic without a placement check.
ResourceTotals configuration_resources(const Configuration& config, const QueryGraph& graph,
                                       const MemoryLevelScheme& scheme,
                                       const TaskManagerSpec& tm);

}  // namespace jsim
