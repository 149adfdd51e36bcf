#include "jsim/run_config.hpp"

#include <json.hpp>
#include <sstream>

namespace jsim {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error("config", message); }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  bad("--" + key + " expects a number, got '" + text + "'");
}

long long parse_int(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  bad("--" + key + " expects an integer, got '" + text + "'");
}

json flag_to_json(const ConfigKey& key, const std::string& text) {
  switch (key.type) {
    case KeyType::number: return parse_double(key.name, text);
    case KeyType::integer: return parse_int(key.name, text);
    case KeyType::boolean:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      bad("--" + key.name + " expects true or false, got '" + text + "'");
    case KeyType::string:
    case KeyType::scenario: return text;
    case KeyType::int_list: {
      json arr = json::array();
      for (const auto& item : split_list(text)) arr.push_back(parse_int(key.name, item));
      return arr;
    }
    case KeyType::number_list: {
      json arr = json::array();
      for (const auto& item : split_list(text)) arr.push_back(parse_double(key.name, item));
      return arr;
    }
  }
  bad("unhandled key type");
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) bad("'" + key + "' must be a number");
  return v.get<double>();
}

long long get_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) bad("'" + key + "' must be an integer");
  return v.get<long long>();
}

OperatorSpec operator_from_json(const json& j) {
  if (!j.is_object()) bad("operators must be objects");
  OperatorSpec op;
  for (const auto& [k, v] : j.items()) {
    if (k == "id") {
      if (!v.is_string()) bad("operator id must be a string");
      op.id = v.get<std::string>();
    } else if (k == "kind") {
      if (!v.is_string()) bad("operator kind must be a string");
      op.kind = operator_kind_from_string(v.get<std::string>());
    } else if (k == "cpu_cost_per_event") op.cpu_cost_per_event = get_number(v, k);
    else if (k == "selectivity") op.selectivity = get_number(v, k);
    else if (k == "reads_per_event") op.reads_per_event = get_number(v, k);
    else if (k == "writes_per_event") op.writes_per_event = get_number(v, k);
    else if (k == "total_state_bytes") op.total_state_bytes = get_number(v, k);
    else if (k == "initial_state_bytes") op.initial_state_bytes = get_number(v, k);
    else if (k == "state_bytes_per_event") op.state_bytes_per_event = get_number(v, k);
    else bad("unknown operator field '" + k + "'");
  }
  if (op.kind == OperatorKind::sink && !j.contains("selectivity")) op.selectivity = 0.0;
  return op;
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) bad("inline scenario must be an object");
  Scenario s;
  s.label = "custom";
  std::optional<json> initial;
  for (const auto& [k, v] : j.items()) {
    if (k == "label") {
      if (!v.is_string()) bad("scenario label must be a string");
      s.label = v.get<std::string>();
    } else if (k == "operators") {
      if (!v.is_array()) bad("operators must be an array");
      for (const auto& o : v) s.graph.operators.push_back(operator_from_json(o));
    } else if (k == "edges") {
      if (!v.is_array()) bad("edges must be an array");
      for (const auto& e : v) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
          bad("each edge must be a pair of operator ids");
        s.graph.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
      }
    } else if (k == "sources") {
      if (!v.is_array()) bad("sources must be an array");
      for (const auto& e : v) {
        if (!e.is_string()) bad("source ids must be strings");
        s.graph.sources.push_back(e.get<std::string>());
      }
    } else if (k == "target_rate") {
      s.graph.target_rate = get_number(v, k);
    } else if (k == "horizon") {
      s.horizon = get_number(v, k);
    } else if (k == "initial_config") {
      initial = v;
    } else {
      bad("unknown scenario field '" + k + "'");
    }
  }
  if (!j.contains("sources"))
    for (const auto& op : s.graph.operators)
      if (op.kind == OperatorKind::source) s.graph.sources.push_back(op.id);
  s.initial_config = initial_configuration(s.graph);
  if (initial) {
    if (!initial->is_object()) bad("initial_config must be an object");
    for (const auto& [id, e] : initial->items()) {
      if (!s.initial_config.entries.count(id)) bad("initial_config names unknown operator '" + id + "'");
      auto& entry = s.initial_config.entries[id];
      for (const auto& [k, v] : e.items()) {
        if (k == "p") entry.p = static_cast<int>(get_int(v, "p"));
        else if (k == "m") entry.m = v.is_null() ? MemoryLevel{} : MemoryLevel(static_cast<int>(get_int(v, "m")));
        else bad("unknown initial_config field '" + k + "'");
      }
    }
  }
  return s;
}

void apply_overrides(Scenario& s, const std::map<std::string, double>& o) {
  for (const auto& [k, v] : o) {
    if (k == "mem_hit_latency") s.calibration.mem_hit_latency = v;
    else if (k == "disk_miss_latency") s.calibration.disk_miss_latency = v;
    else if (k == "memtable_write_latency") s.calibration.memtable_write_latency = v;
    else if (k == "small_memtable_write_penalty") s.calibration.small_memtable_write_penalty = v;
    else if (k == "working_set_overhead") s.calibration.working_set_overhead = v;
    else if (k == "tm_cores") s.tm_spec.cores = static_cast<int>(v);
    else if (k == "tm_memory_mb") s.tm_spec.total_memory_mb = v;
    else if (k == "tm_slots") s.tm_spec.slots = static_cast<int>(v);
    else if (k == "tm_managed_budget_mb") s.tm_spec.managed_memory_budget_mb = v;
    else if (k == "level_base_mb") s.scheme.base_mb = v;
    else if (k == "level_scheme_max") s.scheme.max_level = static_cast<int>(v);
  }
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"scenario", KeyType::scenario, "built-in scenario (q1 q2 q3 q5 q8 q11) or inline graph object"},
      {"policy", KeyType::string, "none, ds2 or justin"},
      {"target_rate", KeyType::number, "source rate override, events/s"},
      {"horizon", KeyType::number, "simulated seconds"},
      {"seed", KeyType::integer, "run seed, recorded in every output"},
      {"output_dir", KeyType::string, "directory for CSV outputs"},
      {"time_scale", KeyType::string, "desk (default) or testbed timing preset"},
      {"dt", KeyType::number, "step length, s"},
      {"window", KeyType::number, "decision window, s"},
      {"stabilization", KeyType::number, "post-reconfiguration discard period, s"},
      {"pause", KeyType::number, "reconfiguration downtime, s"},
      {"provisioning_limit", KeyType::integer, "maximum task managers"},
      {"busy_high", KeyType::number, "scale-out trigger and target utilization"},
      {"busy_low", KeyType::number, "scale-in trigger"},
      {"delta_theta", KeyType::number, "cache hit rate threshold"},
      {"delta_tau", KeyType::number, "access latency threshold, s"},
      {"max_level", KeyType::integer, "policy memory level bound"},
      {"hysteresis", KeyType::number, "minimum relative improvement"},
      {"justin_enabled", KeyType::boolean, "false reduces the justin policy to ds2"},
      {"kind", KeyType::string, "sweep workload: read, write or update"},
      {"parallelism", KeyType::int_list, "sweep parallelisms, comma separated"},
      {"memory_mb", KeyType::number_list, "sweep memory sizes, comma separated"},
      {"mem_hit_latency", KeyType::number, "backend hit latency, s"},
      {"disk_miss_latency", KeyType::number, "backend miss latency, s"},
      {"memtable_write_latency", KeyType::number, "backend write latency, s"},
      {"small_memtable_write_penalty", KeyType::number, "write multiplier below a 64 MB MemTable"},
      {"working_set_overhead", KeyType::number, "cache demand multiplier over raw state"},
      {"tm_cores", KeyType::integer, "cores per task manager"},
      {"tm_memory_mb", KeyType::number, "memory per task manager, MB"},
      {"tm_slots", KeyType::integer, "slots per task manager"},
      {"tm_managed_budget_mb", KeyType::number, "managed memory per task manager, MB"},
      {"level_base_mb", KeyType::number, "managed memory at level 0, MB"},
      {"level_scheme_max", KeyType::integer, "highest memory level the scheme defines"},
  };
  return keys;
}

RunConfig parse_run_config(const std::string& json_text,
                           const std::map<std::string, std::string>& flags) {
  json doc = json::object();
  if (!json_text.empty()) {
    try {
      doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
      bad(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("config file must hold a JSON object");
  }

  std::map<std::string, const ConfigKey*> by_name;
  for (const auto& k : config_keys()) by_name[k.name] = &k;
  for (const auto& [k, v] : doc.items())
    if (!by_name.count(k)) bad("unknown config key '" + k + "'");
  for (const auto& [k, text] : flags) {
    auto it = by_name.find(k);
    if (it == by_name.end()) bad("unknown flag --" + k);
    doc[k] = flag_to_json(*it->second, text);
  }

  RunConfig rc;
  // The preset goes first so explicit timing keys override it.
  if (doc.contains("time_scale")) {
    if (!doc["time_scale"].is_string()) bad("'time_scale' must be a string");
    const auto preset = doc["time_scale"].get<std::string>();
    if (preset == "testbed") rc.options = SimOptions::testbed_scale();
    else if (preset != "desk") bad("time_scale must be desk or testbed");
  }

  for (const auto& [k, v] : doc.items()) {
    if (k == "time_scale") continue;
    if (k == "scenario") {
      if (v.is_string()) {
        rc.scenario = v.get<std::string>();
        rc.inline_scenario.reset();
      } else {
        rc.inline_scenario = scenario_from_json(v);
      }
    } else if (k == "policy") {
      if (!v.is_string()) bad("'policy' must be a string");
      rc.policy = policy_from_string(v.get<std::string>());
    } else if (k == "target_rate") rc.target_rate = get_number(v, k);
    else if (k == "horizon") rc.horizon = get_number(v, k);
    else if (k == "seed") {
      const auto seed = get_int(v, k);
      if (seed < 0) bad("'seed' must be non-negative");
      rc.seed = static_cast<std::uint64_t>(seed);
    } else if (k == "output_dir") {
      if (!v.is_string()) bad("'output_dir' must be a string");
      rc.output_dir = v.get<std::string>();
    } else if (k == "dt") rc.options.dt = get_number(v, k);
    else if (k == "window") rc.options.window = get_number(v, k);
    else if (k == "stabilization") rc.options.stabilization = get_number(v, k);
    else if (k == "pause") rc.options.pause = get_number(v, k);
    else if (k == "provisioning_limit") rc.options.provisioning_limit = static_cast<int>(get_int(v, k));
    else if (k == "busy_high") rc.params.busy_high = get_number(v, k);
    else if (k == "busy_low") rc.params.busy_low = get_number(v, k);
    else if (k == "delta_theta") rc.params.delta_theta = get_number(v, k);
    else if (k == "delta_tau") rc.params.delta_tau = get_number(v, k);
    else if (k == "max_level") rc.params.max_level = static_cast<int>(get_int(v, k));
    else if (k == "hysteresis") rc.params.hysteresis = get_number(v, k);
    else if (k == "justin_enabled") {
      if (!v.is_boolean()) bad("'justin_enabled' must be a boolean");
      rc.params.justin_enabled = v.get<bool>();
    } else if (k == "kind") {
      if (!v.is_string()) bad("'kind' must be a string");
      rc.sweep_kind = micro_kind_from_string(v.get<std::string>());
    } else if (k == "parallelism") {
      if (!v.is_array() || v.empty()) bad("'parallelism' must be a non-empty list");
      rc.sweep_parallelism.clear();
      for (const auto& x : v) rc.sweep_parallelism.push_back(static_cast<int>(get_int(x, k)));
    } else if (k == "memory_mb") {
      if (!v.is_array() || v.empty()) bad("'memory_mb' must be a non-empty list");
      rc.sweep_memory_mb.clear();
      for (const auto& x : v) rc.sweep_memory_mb.push_back(get_number(x, k));
    } else {
      const auto* key = by_name.at(k);
      rc.scenario_overrides[k] = key->type == KeyType::integer ? static_cast<double>(get_int(v, k))
                                                               : get_number(v, k);
    }
  }
  rc.params.validate();
  rc.options.validate();
  return rc;
}

Scenario RunConfig::build_scenario() const {
  Scenario s;
  if (inline_scenario) {
    s = *inline_scenario;
  } else if (is_nexmark_query(scenario)) {
    s = nexmark_like(scenario);
  } else {
    throw Error("unknown-scenario", "unknown scenario '" + scenario + "'");
  }
  if (target_rate) s.graph.target_rate = *target_rate;
  if (horizon) s.horizon = *horizon;
  apply_overrides(s, scenario_overrides);
  s.validate();
  return s;
}

Scenario RunConfig::build_microbenchmark(MicroKind kind, int p, double memory_mb) const {
  Scenario s = microbenchmark(kind, p, memory_mb);
  if (horizon) s.horizon = *horizon;
  auto overrides = scenario_overrides;
  // The microbenchmark fixes its own memory scheme and task managers.
  for (const char* k : {"tm_cores", "tm_memory_mb", "tm_slots", "tm_managed_budget_mb",
                        "level_base_mb", "level_scheme_max"})
    overrides.erase(k);
  apply_overrides(s, overrides);
  s.validate();
  return s;
}

}  // namespace jsim
