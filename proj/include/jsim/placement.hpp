#pragma once

#include <string>
#include <vector>

#include "jsim/core_model.hpp"

namespace jsim {

struct TaskDemand {
  std::string op;
  int task = 0;
  int cores = 1;
  double managed_mb = 0.0;
};

struct TaskManager {
  TaskManagerSpec spec;
  std::vector<TaskDemand> tasks;

  int used_cores() const;
  double used_managed_mb() const;
};

struct ClusterState {
  std::vector<TaskManager> tms;
  int provisioning_limit = 16;

  int tm_count() const { return static_cast<int>(tms.size()); }
  bool holds(const std::string& op, int task) const;
};

// One demand per task of every operator in the configuration.
std::vector<TaskDemand> demands_for(const Configuration& config, const MemoryLevelScheme& scheme);

// First-fit decreasing on managed memory, cores as a second constraint.
// Tasks already in `existing` are dropped and everything is placed again onto
// the existing TMs first, then onto new ones.
ClusterState pack(std::vector<TaskDemand> demands, const TaskManagerSpec& tm_spec,
                  const ClusterState& existing);

ResourceTotals fleet_resources(const ClusterState& state);

// Minimum TM count by exhaustive search. Exponential; meant for tiny inputs.
int optimal_tm_count(const std::vector<TaskDemand>& demands, const TaskManagerSpec& tm_spec);

}  // namespace jsim
