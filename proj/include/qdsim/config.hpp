#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdsim/errors.hpp"
#include "qdsim/params.hpp"
#include "qdsim/solvers.hpp"

namespace qdsim::cli {

enum class Command { steady, evolve, spectrum, sweep_te, sweep_omega, grid };

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

struct ConfigError : Error {
  using Error::Error;
};

struct SweepRange {
  double start = -10.0;
  double stop = 10.0;
  std::size_t count = 401;

  bool operator==(const SweepRange&) const = default;
};

/// Every effective setting of a run. Output path and thread count are not part
/// of it: neither changes the numbers that are written.
struct RunConfig {
  ModelParams model;
  solvers::SolverSettings solver;
  SweepRange sweep;                   ///< swept axis; delta1 axis for `grid`
  SweepRange grid_t_e{0.0, 10.0, 51};  ///< T_e axis for `grid`
  int precision = 9;                  ///< significant digits in CSV data

  bool operator==(const RunConfig&) const = default;
};

/// Documented defaults for a subcommand.
RunConfig default_config(Command command);

/// A command-line override, keyed by config key (underscores, not dashes).
struct Override {
  std::string key;
  std::string value;
};

struct ParsedConfig {
  RunConfig config;
  std::vector<std::string> notices;  ///< precedence notices and warnings for stderr
};

/// Parses a flat `key = value` document (`#` starts a comment), then applies
/// `flags`, which win over file values. Throws ConfigError with the offending
/// key, line number or flag.
ParsedConfig parse_config(std::string_view text, std::span<const Override> flags,
                          Command command);

/// Every accepted key, in echo order (`omega10` last; it is never echoed).
std::span<const std::string_view> config_keys();

/// Closest accepted key by edit distance.
std::string_view nearest_key(std::string_view key);

/// `key` with underscores replaced by dashes, prefixed by `--`.
std::string flag_name(std::string_view key);

/// `# key=value key=value ...`, values in shortest round-trip form.
std::string echo_line(const RunConfig& cfg);

/// Inverse of echo_line.
ParsedConfig parse_echo_line(std::string_view line, Command command);

}  // namespace qdsim::cli
