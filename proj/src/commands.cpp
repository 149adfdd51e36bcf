#include "jsim/commands.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "jsim/csv.hpp"

namespace jsim {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSummaryHeader =
    "label,policy,seed,reconfigurations,convergence_time_s,final_cores,final_memory_mb,"
    "achieved_rate,target_rate,tm_count,final_config,tm_occupancy,error";

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("io", "cannot create output directory '" + dir + "': " + ec.message());
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("io", "cannot write " + path.string());
  f << text;
}

void append_summary(const fs::path& dir, const RunResult& r, const RunSummary& s) {
  const fs::path path = dir / "summary.csv";
  const bool fresh = !fs::exists(path);
  std::ofstream f(path, std::ios::binary | std::ios::app);
  if (!f) throw Error("io", "cannot write " + path.string());
  if (fresh) f << kSummaryHeader << '\n';
  f << r.label << ',' << to_string(r.policy) << ',' << r.seed << ',' << r.reconfiguration_count()
    << ',' << format_number(r.convergence_time()) << ',' << format_number(s.resources.cores) << ','
    << format_number(s.resources.memory_mb) << ',' << format_number(s.achieved_rate) << ','
    << format_number(s.target_rate) << ',' << s.tm_count << ','
    << describe_configuration(r.final_config()) << ',' << describe_occupancy(r.final_cluster) << ','
    << r.error.value_or("") << '\n';
}

std::string trace_text(const RunResult& r) {
  std::ostringstream ss;
  write_trace_csv(ss, r.trace);
  return ss.str();
}

void print_summary(std::ostream& out, const RunResult& r, const RunSummary& s) {
  out << r.label << " [" << to_string(r.policy) << "]\n"
      << "  final configuration: " << describe_configuration(r.final_config()) << '\n'
      << "  reconfigurations:    " << r.reconfiguration_count() << " (last at "
      << format_number(r.convergence_time()) << " s)\n"
      << "  resources:           " << format_number(s.resources.cores) << " cores, "
      << format_number(s.resources.memory_mb) << " MB\n"
      << "  achieved rate:       " << format_number(s.achieved_rate) << " / "
      << format_number(s.target_rate) << " ev/s\n"
      << "  task managers:       " << s.tm_count << " [" << describe_occupancy(r.final_cluster)
      << "]\n";
  if (r.error) out << "  error:               " << *r.error << '\n';
}

double ratio(double a, double b) { return b == 0.0 ? 0.0 : a / b; }

}  // namespace

bool is_config_error(const Error& e) {
  return e.kind() == "config" || e.kind() == "unknown-scenario" || e.kind() == "invalid-level" ||
         e.kind() == "unknown-operator" || e.kind() == "cycle";
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  try {
    scenario = config.build_scenario();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    const RunResult r =
        run(scenario, config.policy, config.params, config.seed, config.options);
    const RunSummary s = summarize(r, scenario, config.options);
    ensure_dir(config.output_dir);
    const fs::path dir(config.output_dir);
    write_file(dir / (r.label + "_" + to_string(r.policy) + ".csv"), trace_text(r));
    append_summary(dir, r, s);
    print_summary(out, r, s);
    if (r.error) {
      err << "error: " << *r.error << '\n';
      return kExitSimulation;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e) ? kExitConfig : kExitSimulation;
  }
  return kExitOk;
}

Comparison compare_policies(const Scenario& scenario, const RunConfig& config) {
  auto launch = [&](PolicyKind policy) {
    return std::async(std::launch::async, [&, policy] {
      return run(scenario, policy, config.params, config.seed, config.options);
    });
  };
  auto ds2 = launch(PolicyKind::ds2);
  auto justin = launch(PolicyKind::justin);
  Comparison c{ds2.get(), justin.get(), {}, {}};
  c.ds2_summary = summarize(c.ds2, scenario, config.options);
  c.justin_summary = summarize(c.justin, scenario, config.options);
  return c;
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  try {
    scenario = config.build_scenario();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    const Comparison c = compare_policies(scenario, config);
    ensure_dir(config.output_dir);
    const fs::path dir(config.output_dir);
    for (const auto* pair : {&c.ds2, &c.justin})
      write_file(dir / (pair->label + "_" + to_string(pair->policy) + ".csv"), trace_text(*pair));
    append_summary(dir, c.ds2, c.ds2_summary);
    append_summary(dir, c.justin, c.justin_summary);

    const auto& d = c.ds2_summary.resources;
    const auto& j = c.justin_summary.resources;
    std::ostringstream cmp;
    cmp << "label,seed,ds2_cores,justin_cores,cores_ratio,ds2_memory_mb,justin_memory_mb,"
           "memory_ratio,ds2_steps,justin_steps,ds2_convergence_s,justin_convergence_s,"
           "ds2_achieved_rate,justin_achieved_rate\n"
        << scenario.label << ',' << config.seed << ',' << format_number(d.cores) << ','
        << format_number(j.cores) << ',' << format_number(ratio(j.cores, d.cores)) << ','
        << format_number(d.memory_mb) << ',' << format_number(j.memory_mb) << ','
        << format_number(ratio(j.memory_mb, d.memory_mb)) << ','
        << c.ds2.reconfiguration_count() << ',' << c.justin.reconfiguration_count() << ','
        << format_number(c.ds2.convergence_time()) << ','
        << format_number(c.justin.convergence_time()) << ','
        << format_number(c.ds2_summary.achieved_rate) << ','
        << format_number(c.justin_summary.achieved_rate) << '\n';
    write_file(dir / (scenario.label + "_compare.csv"), cmp.str());

    print_summary(out, c.ds2, c.ds2_summary);
    print_summary(out, c.justin, c.justin_summary);
    out << "justin/ds2: cores " << format_number(ratio(j.cores, d.cores)) << ", memory "
        << format_number(ratio(j.memory_mb, d.memory_mb)) << ", steps "
        << c.justin.reconfiguration_count() << " vs " << c.ds2.reconfiguration_count() << '\n';
    for (const auto* r : {&c.ds2, &c.justin}) {
      if (r->error) {
        err << "error: " << *r->error << '\n';
        return kExitSimulation;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e) ? kExitConfig : kExitSimulation;
  }
  return kExitOk;
}

std::vector<SweepRow> sweep_grid(const RunConfig& config) {
  if (config.sweep_parallelism.empty() || config.sweep_memory_mb.empty())
    throw Error("config", "sweep needs at least one parallelism and one memory size");
  std::vector<Scenario> scenarios;
  for (int p : config.sweep_parallelism)
    for (double mb : config.sweep_memory_mb)
      scenarios.push_back(config.build_microbenchmark(config.sweep_kind, p, mb));

  std::vector<std::future<RunSummary>> runs;
  for (const auto& s : scenarios) {
    runs.push_back(std::async(std::launch::async, [&s, &config] {
      const RunResult r = run(s, PolicyKind::none, config.params, config.seed, config.options);
      if (r.error) throw Error("simulation", *r.error);
      return summarize(r, s, config.options);
    }));
  }
  std::vector<SweepRow> rows;
  std::size_t i = 0;
  for (int p : config.sweep_parallelism)
    for (double mb : config.sweep_memory_mb) {
      const RunSummary s = runs[i++].get();
      rows.push_back({config.sweep_kind, p, mb, s.achieved_rate, s.target_rate});
    }
  return rows;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<SweepRow> rows;
  try {
    rows = sweep_grid(config);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e) ? kExitConfig : kExitSimulation;
  }
  std::ostringstream csv;
  csv << "kind,p,memory_mb,achieved_rate,target_rate\n";
  for (const auto& r : rows) {
    csv << to_string(r.kind) << ',' << r.p << ',' << format_number(r.memory_mb) << ','
        << format_number(r.achieved_rate) << ',' << format_number(r.target_rate) << '\n';
    out << to_string(r.kind) << " (" << r.p << "; " << format_number(r.memory_mb) << ") -> "
        << format_number(r.achieved_rate) << " ev/s"
        << (r.achieved_rate >= r.target_rate * (1 - 1e-9) ? "  meets target" : "") << '\n';
  }
  try {
    ensure_dir(config.output_dir);
    write_file(fs::path(config.output_dir) / ("sweep_" + to_string(config.sweep_kind) + ".csv"),
               csv.str());
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitSimulation;
  }
  return kExitOk;
}

}  // namespace jsim
