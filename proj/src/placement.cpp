#include "jsim/placement.hpp"

#include <algorithm>
#include <functional>

namespace jsim {

namespace {

constexpr double kEps = 1e-9;

int slot_capacity(const TaskManagerSpec& spec) { return std::min(spec.cores, spec.slots); }

bool fits(const TaskManager& tm, const TaskDemand& d) {
  return tm.used_cores() + d.cores <= slot_capacity(tm.spec) &&
         tm.used_managed_mb() + d.managed_mb <= tm.spec.managed_memory_budget_mb + kEps;
}

bool fits_empty(const TaskManagerSpec& spec, const TaskDemand& d) {
  return d.cores <= slot_capacity(spec) && d.managed_mb <= spec.managed_memory_budget_mb + kEps;
}

}  // namespace

int TaskManager::used_cores() const {
  int n = 0;
  for (const auto& t : tasks) n += t.cores;
  return n;
}

double TaskManager::used_managed_mb() const {
  double mb = 0.0;
  for (const auto& t : tasks) mb += t.managed_mb;
  return mb;
}

bool ClusterState::holds(const std::string& op, int task) const {
  for (const auto& tm : tms)
    for (const auto& t : tm.tasks)
      if (t.op == op && t.task == task) return true;
  return false;
}

std::vector<TaskDemand> demands_for(const Configuration& config, const MemoryLevelScheme& scheme) {
  std::vector<TaskDemand> out;
  for (const auto& [id, e] : config.entries) {
    const double mb = memory_for_level(scheme, e.m);
    for (int t = 0; t < e.p; ++t) out.push_back({id, t, 1, mb});
  }
  return out;
}

ClusterState pack(std::vector<TaskDemand> demands, const TaskManagerSpec& tm_spec,
                  const ClusterState& existing) {
  for (const auto& d : demands) {
    if (!fits_empty(tm_spec, d))
      throw Error("unsatisfiable-demand", "task " + d.op + "#" + std::to_string(d.task) + " needs " +
                                              std::to_string(d.managed_mb) +
                                              " MB, more than one task manager offers");
  }
  std::stable_sort(demands.begin(), demands.end(), [](const TaskDemand& a, const TaskDemand& b) {
    if (a.managed_mb != b.managed_mb) return a.managed_mb > b.managed_mb;
    if (a.op != b.op) return a.op < b.op;
    return a.task < b.task;
  });

  ClusterState out;
  out.provisioning_limit = existing.provisioning_limit;
  for (const auto& tm : existing.tms) out.tms.push_back({tm.spec, {}});

  for (const auto& d : demands) {
    auto slot = std::find_if(out.tms.begin(), out.tms.end(),
                             [&](const TaskManager& tm) { return fits(tm, d); });
    if (slot != out.tms.end()) {
      slot->tasks.push_back(d);
      continue;
    }
    if (out.tm_count() >= out.provisioning_limit)
      throw Error("capacity-exhausted", "placement needs more than " +
                                            std::to_string(out.provisioning_limit) +
                                            " task managers");
    out.tms.push_back({tm_spec, {d}});
  }
  // Released task managers are the trailing empty ones.
  while (!out.tms.empty() && out.tms.back().tasks.empty()) out.tms.pop_back();
  return out;
}

ResourceTotals fleet_resources(const ClusterState& state) {
  ResourceTotals r;
  for (const auto& tm : state.tms) {
    r.cores += tm.spec.cores;
    r.memory_mb += tm.spec.total_memory_mb;
  }
  return r;
}

int optimal_tm_count(const std::vector<TaskDemand>& demands, const TaskManagerSpec& tm_spec) {
  for (const auto& d : demands)
    if (!fits_empty(tm_spec, d)) throw Error("unsatisfiable-demand", "demand exceeds a task manager");
  if (demands.empty()) return 0;

  std::vector<TaskManager> bins;
  int best = static_cast<int>(demands.size());
  std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (static_cast<int>(bins.size()) >= best) return;
    if (i == demands.size()) {
      best = static_cast<int>(bins.size());
      return;
    }
    // Indexed: deeper calls push onto `bins` and may reallocate it.
    for (std::size_t b = 0; b < bins.size(); ++b) {
      if (!fits(bins[b], demands[i])) continue;
      bins[b].tasks.push_back(demands[i]);
      search(i + 1);
      bins[b].tasks.pop_back();
    }
    // Opening a new bin is symmetric across bins, so try it once.
    bins.push_back({tm_spec, {demands[i]}});
    search(i + 1);
    bins.pop_back();
  };
  search(0);
  return best;
}

}  // namespace jsim
