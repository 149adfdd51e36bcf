// Scenario runner: `jsim run|compare|sweep [--config file.json] [--key value ...]`.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "jsim/commands.hpp"

namespace {

constexpr const char* kOutputDirEnv = "JSIM_OUTPUT_DIR";

struct Invocation {
  std::string config_path;
  std::map<std::string, std::string> flags;
};

void add_keys(CLI::App* cmd, Invocation& inv) {
  cmd->add_option("--config", inv.config_path, "JSON config file")->check(CLI::ExistingFile);
  for (const auto& key : jsim::config_keys()) {
    cmd->add_option_function<std::string>(
        "--" + key.name, [&inv, name = key.name](const std::string& v) { inv.flags[name] = v; },
        key.help);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stream-processing autoscaling simulator"};
  app.require_subcommand(1);
  Invocation inv;
  auto* run = app.add_subcommand("run", "simulate one scenario under one policy");
  auto* compare = app.add_subcommand("compare", "simulate a scenario under ds2 and justin");
  auto* sweep = app.add_subcommand("sweep", "fixed-configuration microbenchmark grid");
  for (auto* cmd : {run, compare, sweep}) add_keys(cmd, inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : jsim::kExitConfig;
  }

  std::string text;
  if (!inv.config_path.empty()) {
    std::ifstream f(inv.config_path);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  // Precedence: flag, then environment, then file.
  if (!inv.flags.count("output_dir"))
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) inv.flags["output_dir"] = env;

  jsim::RunConfig config;
  try {
    config = jsim::parse_run_config(text, inv.flags);
  } catch (const jsim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return jsim::kExitConfig;
  }

  if (run->parsed()) return jsim::cmd_run(config, std::cout, std::cerr);
  if (compare->parsed()) return jsim::cmd_compare(config, std::cout, std::cerr);
  return jsim::cmd_sweep(config, std::cout, std::cerr);
}
