#pragma once

#include <optional>

#include "jsim/core_model.hpp"
#include "jsim/ds2.hpp"
#include "jsim/metrics.hpp"

namespace jsim {

// Which rule fired for an operator; exposed for tests and traces.
enum class JustinBranch { stateless, unchanged, scale_up_further, no_headroom, rollback, scale_up, accept };

std::string to_string(JustinBranch branch);

struct JustinResult {
  Configuration config;
  std::map<std::string, JustinBranch> branches;
};

// `history.back()` must describe `previous` and the window just measured.
JustinResult justin_scale_explained(const Configuration& ds2_proposal,
                                    const Configuration& previous,
                                    const DecisionHistory& history, const MetricWindow& window,
                                    const PolicyParams& params);

Configuration justin_scale(const Configuration& ds2_proposal, const Configuration& previous,
                           const DecisionHistory& history, const MetricWindow& window,
                           const PolicyParams& params);

// Returns nullopt when the trigger does not fire. Otherwise appends
// (config, window) to the history and returns the next configuration, which
// may equal the current allocation with refreshed v flags.
std::optional<Configuration> decide(const MetricWindow& window, const QueryGraph& graph,
                                    const Configuration& config, DecisionHistory& history,
                                    const PolicyParams& params);

}  // namespace jsim
