#pragma once

#include <optional>
#include <string>

#include "jsim/core_model.hpp"
#include "jsim/state_backend.hpp"

namespace jsim {

struct Scenario {
  QueryGraph graph;
  Configuration initial_config;
  TaskManagerSpec tm_spec;
  MemoryLevelScheme scheme;
  BackendCalibration calibration;
  double horizon = 240.0;  // s
  std::string label;

  void validate() const;
};

enum class MicroKind { read, write, update };

std::string to_string(MicroKind kind);
MicroKind micro_kind_from_string(const std::string& text);

// Memory sizes accepted by microbenchmark(); they map onto levels 0..4 of a
// 128 MB scheme.
inline constexpr double kMicroMemorySizes[] = {128, 256, 512, 1024, 2048};

Scenario microbenchmark(MicroKind kind, int parallelism, double memory_mb);
double microbenchmark_target(MicroKind kind);

// Supported ids: q1, q2, q3, q5, q8, q11.
Scenario nexmark_like(const std::string& query, std::optional<double> target_rate = std::nullopt);
bool is_nexmark_query(const std::string& query);

// Parallelism 1 everywhere, level 0 memory, v false.
Configuration initial_configuration(const QueryGraph& graph);

}  // namespace jsim
