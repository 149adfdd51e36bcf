#include "jsim/csv.hpp"

#include <cmath>
#include <cstdio>

namespace jsim {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
  out << kTraceHeader << '\n';
  for (const auto& pt : trace) {
    out << format_number(pt.time) << ',' << pt.op << ',' << pt.p << ',' << level_to_string(pt.m)
        << ',' << format_number(pt.offered_rate) << ',' << format_number(pt.processed_rate) << ','
        << format_number(pt.busyness) << ',' << format_optional(pt.theta) << ','
        << format_optional(pt.tau) << ',' << (pt.backpressured ? "true" : "false") << ','
        << format_number(pt.total_cores) << ',' << format_number(pt.total_memory_mb) << '\n';
  }
}

std::string describe_configuration(const Configuration& config) {
  std::string out;
  for (const auto& [id, e] : config.entries) {
    if (!out.empty()) out += ';';
    out += id + '=' + std::to_string(e.p) + ':' + level_to_string(e.m);
  }
  return out;
}

std::string describe_occupancy(const ClusterState& cluster) {
  std::string out;
  for (const auto& tm : cluster.tms) {
    if (!out.empty()) out += '|';
    out += std::to_string(tm.tasks.size()) + '/' + format_number(tm.used_managed_mb());
  }
  return out;
}

}  // namespace jsim
