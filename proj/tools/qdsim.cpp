// qdsim: steady states, trajectories and parameter sweeps of the asymmetric
// double-quantum-dot three-level model.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qdsim/commands.hpp"
#include "qdsim/config.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw qdsim::cli::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qdsim::cli;

  CLI::App app{"Double quantum dot density-matrix simulator"};
  app.set_help_flag("-h,--help", "Print this help message and exit");

  std::string subcommand;
  app.add_option("subcommand", subcommand,
                 "steady | evolve | spectrum | sweep-te | sweep-omega | grid")
      ->required()
      ->check(CLI::IsMember({"steady", "evolve", "spectrum", "sweep-te", "sweep-omega", "grid"}));

  std::string config_path;
  std::string out_path;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);

  const auto keys = config_keys();
  std::vector<std::string> values(keys.size());
  std::vector<CLI::Option*> key_options;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    key_options.push_back(app.add_option(flag_name(keys[i]), values[i],
                                         "override config key " + std::string(keys[i])));
  }

  app.allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  const Command command = *parse_command(subcommand);
  std::vector<Override> overrides;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (key_options[i]->count() > 0) overrides.push_back({std::string(keys[i]), values[i]});
  }
  // Unrecognised --flags are passed on as keys so the error names the nearest valid one.
  const std::vector<std::string> extras = app.remaining();
  for (std::size_t i = 0; i < extras.size(); ++i) {
    if (extras[i].rfind("--", 0) != 0) {
      std::cerr << "error: unexpected argument '" << extras[i] << "'\n";
      return kExitConfigError;
    }
    std::string key = extras[i].substr(2);
    std::replace(key.begin(), key.end(), '-', '_');
    overrides.push_back({key, i + 1 < extras.size() ? extras[++i] : std::string()});
  }

  ParsedConfig parsed;
  try {
    const std::string text = config_path.empty() ? std::string() : read_file(config_path);
    parsed = parse_config(text, overrides, command);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  for (const auto& notice : parsed.notices) std::cerr << notice << '\n';

  OutputOptions options;
  if (!out_path.empty()) options.out = out_path;
  options.threads = threads;
  return run_command(parsed.config, command, options, std::cout, std::cerr);
}
