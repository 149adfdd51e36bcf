#pragma once

#include <ostream>

#include "jsim/run_config.hpp"

namespace jsim {

enum ExitStatus : int { kExitOk = 0, kExitSimulation = 1, kExitConfig = 2 };

// Error kinds produced by configuration problems rather than by a run.
bool is_config_error(const Error& e);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);

struct SweepRow {
  MicroKind kind;
  int p;
  double memory_mb;
  double achieved_rate;
  double target_rate;
};

// The sweep grid without any file output.
std::vector<SweepRow> sweep_grid(const RunConfig& config);

struct Comparison {
  RunResult ds2;
  RunResult justin;
  RunSummary ds2_summary;
  RunSummary justin_summary;
};

// Both policies on the same scenario and seed, run concurrently.
Comparison compare_policies(const Scenario& scenario, const RunConfig& config);

}  // namespace jsim
