#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jsim/ds2.hpp"
#include "jsim/simulator.hpp"
#include "jsim/workload.hpp"

namespace jsim {

enum class KeyType { number, integer, boolean, string, int_list, number_list, scenario };

struct ConfigKey {
  std::string name;
  KeyType type;
  std::string help;
};

// Every key is accepted both in the config file and as `--<name> value`.
const std::vector<ConfigKey>& config_keys();

struct RunConfig {
  std::string scenario = "q11";
  std::optional<Scenario> inline_scenario;
  PolicyKind policy = PolicyKind::justin;
  PolicyParams params;
  SimOptions options;
  std::optional<double> target_rate;
  std::optional<double> horizon;
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  MicroKind sweep_kind = MicroKind::read;
  std::vector<int> sweep_parallelism{1, 2, 4, 8};
  std::vector<double> sweep_memory_mb{128, 256, 512, 1024, 2048};

  // Overrides applied on top of whichever scenario is selected.
  std::map<std::string, double> scenario_overrides;

  // Built-in or inline scenario with all overrides applied, validated.
  Scenario build_scenario() const;
  Scenario build_microbenchmark(MicroKind kind, int p, double memory_mb) const;
};

// `json_text` may be empty. Flag values are strings and are converted by the
// key's declared type, then override file values. Throws Error("config").
RunConfig parse_run_config(const std::string& json_text,
                           const std::map<std::string, std::string>& flags);

}  // namespace jsim
