#include "jsim/justin.hpp"

namespace jsim {

std::string to_string(JustinBranch branch) {
  switch (branch) {
    case JustinBranch::stateless: return "stateless";
    case JustinBranch::unchanged: return "unchanged";
    case JustinBranch::scale_up_further: return "scale-up-further";
    case JustinBranch::no_headroom: return "no-headroom";
    case JustinBranch::rollback: return "rollback";
    case JustinBranch::scale_up: return "scale-up";
    case JustinBranch::accept: return "accept";
  }
  return "unknown";
}

JustinResult justin_scale_explained(const Configuration& ds2_proposal,
                                    const Configuration& previous,
                                    const DecisionHistory& history, const MetricWindow& window,
                                    const PolicyParams& params) {
  if (history.size() == 0 || !history.back().config.same_allocation(previous))
    throw Error("history", "history does not end with the previous configuration");
  if (ds2_proposal.entries.size() != previous.entries.size())
    throw Error("history", "proposal and previous configuration cover different operators");

  JustinResult result;
  result.config.timestamp = ds2_proposal.timestamp;
  for (const auto& [id, proposed] : ds2_proposal.entries) {
    const ConfigEntry& prev = previous.at(id);
    const OperatorMetrics& m = window.at(id);
    ConfigEntry next{proposed.p, prev.m, false};
    JustinBranch branch;

    if (!m.theta) {
      next.m = std::nullopt;
      branch = JustinBranch::stateless;
    } else if (!prev.m) {
      throw Error("model", "'" + id + "' reports backend metrics without managed memory");
    } else if (proposed.p == prev.p) {
      next = prev;
      next.v = false;
      branch = JustinBranch::unchanged;
    } else if (prev.v) {
      if (improvement(history, id, params.hysteresis)) {
        if (*prev.m + 1 < params.max_level) {
          next = {prev.p, *prev.m + 1, true};
          branch = JustinBranch::scale_up_further;
        } else {
          branch = JustinBranch::no_headroom;
        }
      } else {
        // v = true means the previous step raised m, so m >= 1 here.
        if (*prev.m < 1) throw Error("model", "'" + id + "' is marked scaled up at level 0");
        next.m = *prev.m - 1;
        branch = JustinBranch::rollback;
      }
    } else if ((*m.theta < params.delta_theta || m.tau.value_or(0.0) > params.delta_tau) &&
               *prev.m + 1 < params.max_level) {
      next = {prev.p, *prev.m + 1, true};
      branch = JustinBranch::scale_up;
    } else {
      branch = JustinBranch::accept;
    }
    result.config.entries[id] = next;
    result.branches[id] = branch;
  }
  return result;
}

Configuration justin_scale(const Configuration& ds2_proposal, const Configuration& previous,
                           const DecisionHistory& history, const MetricWindow& window,
                           const PolicyParams& params) {
  return justin_scale_explained(ds2_proposal, previous, history, window, params).config;
}

std::optional<Configuration> decide(const MetricWindow& window, const QueryGraph& graph,
                                    const Configuration& config, DecisionHistory& history,
                                    const PolicyParams& params) {
  if (!should_trigger(window, graph, config, params)) return std::nullopt;
  history.append(config, window);
  Configuration proposal = ds2_scale(window, graph, config, params);
  if (!params.justin_enabled) return proposal;
  return justin_scale(proposal, config, history, window, params);
}

}  // namespace jsim
