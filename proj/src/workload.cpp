#include "jsim/workload.hpp"

#include <cmath>

namespace jsim {

namespace {

constexpr double kSinkCost = 0.05e-6;
constexpr double kMicroStateBytes = 1'000'001.0 * 1'000.0;
constexpr double kMicroBaseMb = 128.0;
constexpr double kMicroHorizon = 60.0;
constexpr double kNexmarkHorizon = 240.0;

OperatorSpec source_op() { return {.id = "source", .kind = OperatorKind::source}; }

OperatorSpec sink_op() {
  return {.id = "sink", .kind = OperatorKind::sink, .cpu_cost_per_event = kSinkCost, .selectivity = 0.0};
}

QueryGraph chain(std::vector<OperatorSpec> ops, double target_rate) {
  QueryGraph g;
  g.operators = std::move(ops);
  for (std::size_t i = 0; i + 1 < g.operators.size(); ++i)
    g.edges.emplace_back(g.operators[i].id, g.operators[i + 1].id);
  g.sources = {g.operators.front().id};
  g.target_rate = target_rate;
  return g;
}

}  // namespace

void Scenario::validate() const {
  auto issues = validate_graph(graph);
  if (!issues.empty()) throw Error("config", "scenario '" + label + "': " + issues.front().message);
  tm_spec.validate();
  scheme.validate();
  calibration.validate();
  if (!(horizon > 0.0)) throw Error("config", "scenario horizon must be positive");
  if (initial_config.entries.size() != graph.operators.size())
    throw Error("config", "initial configuration must cover exactly the graph's operators");
  for (const auto& op : graph.operators) {
    const auto& e = initial_config.at(op.id);
    if (e.p < 1) throw Error("config", "parallelism of '" + op.id + "' must be >= 1");
    if (op.is_stateful() && !e.m) throw Error("config", "stateful '" + op.id + "' needs managed memory");
    memory_for_level(scheme, e.m);
  }
}

std::string to_string(MicroKind kind) {
  switch (kind) {
    case MicroKind::read: return "read";
    case MicroKind::write: return "write";
    case MicroKind::update: return "update";
  }
  return "unknown";
}

MicroKind micro_kind_from_string(const std::string& text) {
  if (text == "read") return MicroKind::read;
  if (text == "write") return MicroKind::write;
  if (text == "update") return MicroKind::update;
  throw Error("config", "unknown microbenchmark kind '" + text + "'");
}

double microbenchmark_target(MicroKind kind) {
  return kind == MicroKind::update ? 30'000.0 : 50'000.0;
}

Configuration initial_configuration(const QueryGraph& graph) {
  Configuration c;
  for (const auto& op : graph.operators) c.entries[op.id] = ConfigEntry{1, 0, false};
  return c;
}

Scenario microbenchmark(MicroKind kind, int parallelism, double memory_mb) {
  if (parallelism < 1 || parallelism > 8)
    throw Error("config", "microbenchmark parallelism must be in 1..8");
  int level = -1;
  for (int i = 0; i < 5; ++i)
    if (kMicroMemorySizes[i] == memory_mb) level = i;
  if (level < 0)
    throw Error("config", "microbenchmark memory must be one of 128, 256, 512, 1024, 2048 MB");

  // Per-event CPU cost of the operator body; calibration, not measurement.
  OperatorSpec op{.id = to_string(kind), .kind = OperatorKind::stateful, .total_state_bytes = kMicroStateBytes};
  switch (kind) {
    case MicroKind::read: op.cpu_cost_per_event = 65e-6, op.reads_per_event = 1; break;
    case MicroKind::write: op.cpu_cost_per_event = 80e-6, op.writes_per_event = 1; break;
    case MicroKind::update:
      op.cpu_cost_per_event = 135e-6, op.reads_per_event = 1, op.writes_per_event = 1;
      break;
  }

  Scenario s;
  s.graph = chain({source_op(), op, sink_op()}, microbenchmark_target(kind));
  s.scheme = {kMicroBaseMb, 4};
  s.tm_spec = {4, 4 * (memory_mb + 384.0), 4, 4 * memory_mb};
  s.initial_config.entries["source"] = {1, std::nullopt, false};
  s.initial_config.entries[op.id] = {parallelism, level, false};
  s.initial_config.entries["sink"] = {1, std::nullopt, false};
  s.horizon = kMicroHorizon;
  char label[64];
  std::snprintf(label, sizeof label, "micro_%s_p%d_m%d", op.id.c_str(), parallelism,
                static_cast<int>(memory_mb));
  s.label = label;
  return s;
}

bool is_nexmark_query(const std::string& query) {
  return query == "q1" || query == "q2" || query == "q3" || query == "q5" || query == "q8" ||
         query == "q11";
}

Scenario nexmark_like(const std::string& query, std::optional<double> target_rate) {
  Scenario s;
  s.label = query;
  s.horizon = kNexmarkHorizon;

  if (query == "q1") {
    OperatorSpec map{.id = "map", .kind = OperatorKind::stateless, .cpu_cost_per_event = 2.3e-6};
    s.graph = chain({source_op(), map, sink_op()}, 2'250'000.0);
  } else if (query == "q2") {
    OperatorSpec filter{.id = "filter", .kind = OperatorKind::stateless, .cpu_cost_per_event = 2.3e-6,
                        .selectivity = 0.1};
    s.graph = chain({source_op(), filter, sink_op()}, 2'250'000.0);
  } else if (query == "q3") {
    OperatorSpec auctions{.id = "filter_auctions", .kind = OperatorKind::stateless,
                          .cpu_cost_per_event = 0.5e-6, .selectivity = 0.2};
    OperatorSpec persons{.id = "filter_persons", .kind = OperatorKind::stateless,
                         .cpu_cost_per_event = 0.5e-6, .selectivity = 0.05};
    OperatorSpec join{.id = "join", .kind = OperatorKind::stateful, .cpu_cost_per_event = 10e-6,
                      .selectivity = 0.5, .reads_per_event = 1, .writes_per_event = 1,
                      .total_state_bytes = 8 * kMiB};
    s.graph.operators = {source_op(), auctions, persons, join, sink_op()};
    s.graph.edges = {{"source", "filter_auctions"}, {"source", "filter_persons"},
                     {"filter_auctions", "join"}, {"filter_persons", "join"}, {"join", "sink"}};
    s.graph.sources = {"source"};
    s.graph.target_rate = 1'000'000.0;
  } else if (query == "q5") {
    OperatorSpec agg{.id = "window_agg", .kind = OperatorKind::stateful, .cpu_cost_per_event = 15.8e-6,
                     .selectivity = 0.1, .reads_per_event = 1, .writes_per_event = 1,
                     .total_state_bytes = 10 * kMiB};
    s.graph = chain({source_op(), agg, sink_op()}, 1'000'000.0);
  } else if (query == "q8") {
    // Window state fills as events arrive, up to the cap.
    OperatorSpec join{.id = "window_join", .kind = OperatorKind::stateful, .cpu_cost_per_event = 30e-6,
                      .selectivity = 0.1, .reads_per_event = 1, .writes_per_event = 1,
                      .total_state_bytes = 400 * kMiB, .initial_state_bytes = 50 * kMiB,
                      .state_bytes_per_event = 200};
    s.graph = chain({source_op(), join, sink_op()}, 50'000.0);
  } else if (query == "q11") {
    OperatorSpec agg{.id = "session_agg", .kind = OperatorKind::stateful, .cpu_cost_per_event = 40e-6,
                     .selectivity = 0.1, .reads_per_event = 2, .writes_per_event = 1,
                     .total_state_bytes = 800 * kMiB, .initial_state_bytes = 100 * kMiB,
                     .state_bytes_per_event = 400};
    s.graph = chain({source_op(), agg, sink_op()}, 50'000.0);
  } else {
    throw Error("unknown-scenario", "unsupported query '" + query + "'");
  }
  if (target_rate) s.graph.target_rate = *target_rate;
  s.initial_config = initial_configuration(s.graph);
  return s;
}

}  // namespace jsim
