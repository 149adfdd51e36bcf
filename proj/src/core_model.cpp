#include "jsim/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "jsim/placement.hpp"

namespace jsim {

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::source: return "source";
    case OperatorKind::sink: return "sink";
    case OperatorKind::stateless: return "stateless";
    case OperatorKind::stateful: return "stateful";
  }
  return "unknown";
}

OperatorKind operator_kind_from_string(const std::string& text) {
  if (text == "source") return OperatorKind::source;
  if (text == "sink") return OperatorKind::sink;
  if (text == "stateless") return OperatorKind::stateless;
  if (text == "stateful") return OperatorKind::stateful;
  throw Error("config", "unknown operator kind '" + text + "'");
}

const OperatorSpec& QueryGraph::op(const std::string& id) const {
  for (const auto& o : operators)
    if (o.id == id) return o;
  throw Error("unknown-operator", "no operator named '" + id + "'");
}

bool QueryGraph::contains(const std::string& id) const {
  return std::any_of(operators.begin(), operators.end(),
                     [&](const OperatorSpec& o) { return o.id == id; });
}

std::vector<std::string> QueryGraph::upstream(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& [from, to] : edges)
    if (to == id) out.push_back(from);
  return out;
}

std::vector<std::string> QueryGraph::downstream(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& [from, to] : edges)
    if (from == id) out.push_back(to);
  return out;
}

namespace {

// Returns the order and leaves `stuck` with the operators caught in cycles.
std::vector<std::string> kahn(const QueryGraph& graph, std::vector<std::string>& stuck) {
  std::map<std::string, int> indegree;
  for (const auto& o : graph.operators) indegree[o.id] = 0;
  for (const auto& [from, to] : graph.edges)
    if (indegree.count(from) && indegree.count(to)) ++indegree[to];

  std::vector<std::string> order;
  std::set<std::string> done;
  bool progressed = true;
  // Declaration-order scan keeps the result deterministic without a heap.
  while (progressed) {
    progressed = false;
    for (const auto& o : graph.operators) {
      if (done.count(o.id) || indegree[o.id] != 0) continue;
      done.insert(o.id);
      order.push_back(o.id);
      for (const auto& [from, to] : graph.edges)
        if (from == o.id && indegree.count(to)) --indegree[to];
      progressed = true;
    }
  }
  for (const auto& o : graph.operators)
    if (!done.count(o.id)) stuck.push_back(o.id);
  return order;
}

}  // namespace

std::vector<std::string> topological_order(const QueryGraph& graph) {
  std::vector<std::string> stuck;
  auto order = kahn(graph, stuck);
  if (!stuck.empty()) throw Error("cycle", "graph has a cycle through '" + stuck.front() + "'");
  return order;
}

std::vector<GraphIssue> validate_graph(const QueryGraph& graph) {
  std::vector<GraphIssue> issues;
  auto report = [&](std::string kind, std::string message) {
    issues.push_back({std::move(kind), std::move(message)});
  };

  std::set<std::string> ids;
  for (const auto& o : graph.operators) {
    if (o.id.empty()) report("operator", "operator with empty id");
    if (!ids.insert(o.id).second) report("duplicate", "duplicate operator id '" + o.id + "'");
    const bool has_access = o.reads_per_event > 0.0 || o.writes_per_event > 0.0;
    if (o.kind != OperatorKind::stateful) {
      if (has_access || o.total_state_bytes != 0.0)
        report("operator", "'" + o.id + "' is " + to_string(o.kind) + " but declares state");
    } else if (!has_access) {
      report("operator", "stateful '" + o.id + "' has no state accesses");
    }
    if (o.kind == OperatorKind::sink && o.selectivity != 0.0)
      report("operator", "sink '" + o.id + "' must have selectivity 0");
    if (o.cpu_cost_per_event < 0.0 || o.selectivity < 0.0 || o.reads_per_event < 0.0 ||
        o.writes_per_event < 0.0 || o.total_state_bytes < 0.0 || o.state_bytes_per_event < 0.0)
      report("operator", "'" + o.id + "' has a negative field");
  }

  for (const auto& [from, to] : graph.edges) {
    if (!ids.count(from) || !ids.count(to))
      report("edge", "edge " + from + "->" + to + " names an unknown operator");
  }

  std::set<std::string> sources(graph.sources.begin(), graph.sources.end());
  if (sources.empty()) report("source", "graph has no source");
  for (const auto& s : sources) {
    if (!ids.count(s)) {
      report("source", "source '" + s + "' is not an operator");
      continue;
    }
    if (graph.op(s).kind != OperatorKind::source)
      report("source", "'" + s + "' is listed as a source but is " + to_string(graph.op(s).kind));
    if (!graph.upstream(s).empty())
      report("source-incoming", "source '" + s + "' has an incoming edge");
  }
  for (const auto& o : graph.operators) {
    if (o.kind == OperatorKind::source && !sources.count(o.id))
      report("source", "'" + o.id + "' has kind source but is not listed as a source");
    if (o.kind == OperatorKind::sink && !graph.downstream(o.id).empty())
      report("sink-outgoing", "sink '" + o.id + "' has an outgoing edge");
  }

  std::vector<std::string> stuck;
  kahn(graph, stuck);
  if (!stuck.empty()) report("cycle", "cycle through '" + stuck.front() + "'");

  std::set<std::string> reached;
  std::deque<std::string> frontier;
  for (const auto& s : sources)
    if (ids.count(s) && reached.insert(s).second) frontier.push_back(s);
  while (!frontier.empty()) {
    auto cur = frontier.front();
    frontier.pop_front();
    for (const auto& next : graph.downstream(cur))
      if (ids.count(next) && reached.insert(next).second) frontier.push_back(next);
  }
  for (const auto& o : graph.operators)
    if (!reached.count(o.id)) report("orphan", "'" + o.id + "' is not reachable from a source");

  if (!(graph.target_rate >= 0.0)) report("rate", "target rate must be non-negative");
  return issues;
}

std::string level_to_string(const MemoryLevel& level) {
  return level ? std::to_string(*level) : std::string("none");
}

const ConfigEntry& Configuration::at(const std::string& id) const {
  auto it = entries.find(id);
  if (it == entries.end()) throw Error("unknown-operator", "configuration has no entry for '" + id + "'");
  return it->second;
}

bool Configuration::same_allocation(const Configuration& o) const {
  if (entries.size() != o.entries.size()) return false;
  for (const auto& [id, e] : entries) {
    auto it = o.entries.find(id);
    if (it == o.entries.end() || !e.same_allocation(it->second)) return false;
  }
  return true;
}

void TaskManagerSpec::validate() const {
  if (cores <= 0 || slots <= 0 || total_memory_mb <= 0.0 || managed_memory_budget_mb < 0.0)
    throw Error("config", "task manager fields must be positive");
  if (slots > cores) throw Error("config", "task manager has more slots than cores");
  if (managed_memory_budget_mb > total_memory_mb)
    throw Error("config", "managed memory budget exceeds task manager memory");
}

void MemoryLevelScheme::validate() const {
  if (!(base_mb > 0.0)) throw Error("config", "memory level base must be positive");
  if (max_level < 1) throw Error("config", "max level must be at least 1");
}

double memory_for_level(const MemoryLevelScheme& scheme, const MemoryLevel& level) {
  if (!level) return 0.0;
  if (*level < 0 || *level > scheme.max_level)
    throw Error("invalid-level", "memory level " + std::to_string(*level) + " outside 0.." +
                                     std::to_string(scheme.max_level));
  return std::ldexp(scheme.base_mb, *level);
}

double non_managed_slot_mb(const MemoryLevelScheme& scheme, const TaskManagerSpec& tm) {
  return tm.total_memory_mb / tm.slots - scheme.base_mb;
}

ResourceTotals configuration_resources(const Configuration& config, const QueryGraph& graph,
                                       const MemoryLevelScheme& scheme,
                                       const TaskManagerSpec& tm) {
  ResourceTotals totals;
  const double overhead = non_managed_slot_mb(scheme, tm);
  for (const auto& [id, e] : config.entries) {
    if (graph.op(id).kind == OperatorKind::source) continue;
    totals.cores += e.p;
    totals.memory_mb += e.p * (overhead + memory_for_level(scheme, e.m));
  }
  return totals;
}

ResourceTotals total_resources(const Configuration& config, const QueryGraph& graph,
                               const MemoryLevelScheme& scheme, const TaskManagerSpec& tm,
                               const ClusterState& placement) {
  for (const auto& [id, e] : config.entries) {
    if (graph.op(id).kind == OperatorKind::source) continue;
    for (int t = 0; t < e.p; ++t)
      if (!placement.holds(id, t))
        throw Error("placement", "task " + id + "#" + std::to_string(t) + " is not placed");
  }
  return configuration_resources(config, graph, scheme, tm);
}

}  // namespace jsim
