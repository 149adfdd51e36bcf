#include "jsim/metrics.hpp"

namespace jsim {

const OperatorMetrics& MetricWindow::at(const std::string& id) const {
  auto it = ops.find(id);
  if (it == ops.end()) throw Error("unknown-operator", "window has no metrics for '" + id + "'");
  return it->second;
}

MetricWindow aggregate(const std::vector<TracePoint>& points, double start, double end) {
  if (!(end > start)) throw Error("empty-window", "window end must follow its start");

  struct Acc {
    int n = 0;
    double busy = 0, offered = 0, processed = 0, output = 0, theta = 0, tau = 0;
    int theta_n = 0, tau_n = 0;
    bool bp = false;
  };
  std::map<std::string, Acc> acc;
  for (const auto& pt : points) {
    if (pt.time < start || pt.time >= end) continue;
    auto& a = acc[pt.op];
    ++a.n;
    a.busy += pt.busyness;
    a.offered += pt.offered_rate;
    a.processed += pt.processed_rate;
    a.output += pt.output_rate;
    if (pt.theta) a.theta += *pt.theta, ++a.theta_n;
    if (pt.tau) a.tau += *pt.tau, ++a.tau_n;
    a.bp = a.bp || pt.backpressured;
  }
  if (acc.empty()) throw Error("empty-window", "no trace points inside the window");

  MetricWindow w;
  w.window_start = start;
  w.window_end = end;
  for (const auto& [id, a] : acc) {
    OperatorMetrics m;
    m.busyness = a.busy / a.n;
    m.offered_rate = a.offered / a.n;
    m.processed_rate = a.processed / a.n;
    m.output_rate = a.output / a.n;
    if (a.theta_n) m.theta = a.theta / a.theta_n;
    if (a.tau_n) m.tau = a.tau / a.tau_n;
    m.backpressured = a.bp;
    w.ops[id] = m;
  }
  return w;
}

void DecisionHistory::append(Configuration config, MetricWindow window) {
  if (!entries_.empty() && config.timestamp <= entries_.back().config.timestamp)
    throw Error("history", "history timestamps must be strictly increasing");
  entries_.push_back({std::move(config), std::move(window)});
}

const HistoryEntry& DecisionHistory::back() const {
  if (entries_.empty()) throw Error("history", "history is empty");
  return entries_.back();
}

bool improvement(const DecisionHistory& history, const std::string& op, double hysteresis) {
  if (history.size() < 2) throw Error("history", "improvement needs two history entries");
  const auto& cur = history.entries()[history.size() - 1].window;
  const auto& prev = history.entries()[history.size() - 2].window;
  if (!cur.ops.count(op) || !prev.ops.count(op))
    throw Error("unknown-operator", "operator '" + op + "' is absent from the history");
  const auto& now = cur.at(op);
  const auto& before = prev.at(op);

  // The strict comparison keeps hysteresis 0 from counting a tie as progress.
  bool better_theta = false;
  if (now.theta && before.theta)
    better_theta = *now.theta > *before.theta && *now.theta >= *before.theta * (1.0 + hysteresis);
  bool better_tau = false;
  if (now.tau && before.tau)
    better_tau = *now.tau < *before.tau && *now.tau <= *before.tau * (1.0 - hysteresis);
  return better_theta || better_tau;
}

}  // namespace jsim
