#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "centralkit/config.hpp"
#include "centralkit/errors.hpp"
#include "centralkit/oracles.hpp"
#include "centralkit_cli/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace centralkit;

  CLI::App app{"centralkit: central schemes and spectral tools for 1D conservation laws"};
  app.require_subcommand(1);
  app.footer("Config keys (key = value, '#' comments):\n" + config_reference() +
             "\ndetect-edges and mollify process the initial data, or the state at t_final when\n"
             "method is sv or galerkin.\n\nEnvironment: CENTRALKIT_THREADS caps parallelism.\n"
             "Exit codes: 0 success, 1 usage error, 2 solver failure, 3 battery failure.");

  std::string config_path;
  std::string output_dir = "centralkit_out";
  std::vector<std::string> overrides;

  const std::pair<const char*, const char*> commands[] = {
      {"solve", "run a solver and write solution.csv"},
      {"detect-edges", "locate jumps with the minmod concentration detector"},
      {"mollify", "adaptive mollification and filtering of a spectral projection"},
      {"convergence", "refinement study against an exact solution"},
      {"battery", "run every acceptance criterion"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--output", output_dir, "output directory")->capture_default_str();
    sub->add_option("--override", overrides, "key=value applied after the config file")
        ->allow_extra_args(false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg = config_path.empty() ? RunConfig{} : read_config(read_file(config_path));
    for (const auto& o : overrides) apply_override(cfg, o);
    cfg.subcommand = parse_subcommand(app.get_subcommands().front()->get_name());
    validate(cfg);
  } catch (const std::exception& e) {
    std::cerr << "centralkit: " << (config_path.empty() ? "" : config_path + ": ") << e.what() << '\n';
    return cli::kExitUsage;
  }

  try {
    return cli::run(cfg, output_dir, std::cout, cli::thread_budget());
  } catch (const SolverError& e) {
    std::cerr << "centralkit: solver failure: " << e.what() << '\n';
  } catch (const BreakdownError& e) {
    std::cerr << "centralkit: oracle failure: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "centralkit: " << e.what() << '\n';
  }
  return cli::kExitSolver;
}
