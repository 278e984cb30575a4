#include "qdsim/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <string>

namespace qdsim::cli {

namespace {

constexpr std::array<std::string_view, 23> kKeys = {
    "omega_rabi",     "delta1",      "omega12",        "t_e",
    "gamma1",         "gamma2",      "gamma3",         "big_gamma10",
    "big_gamma12",    "big_gamma20", "mode",           "dt",
    "t_max",          "relax_tol",   "sample_stride",  "sweep_start",
    "sweep_stop",     "sweep_count", "grid_t_e_start", "grid_t_e_stop",
    "grid_t_e_count", "precision",   "omega10",
};

struct BadValue {
  std::string reason;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw BadValue{"malformed number '" + std::string(v) + "'"};
  }
  return out;
}

std::size_t to_count(std::string_view v) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
    throw BadValue{"malformed integer '" + std::string(v) + "'"};
  }
  return out;
}

// Returns a warning when the key is accepted but has no effect.
std::optional<std::string> assign(RunConfig& cfg, std::string_view key, std::string_view v) {
  ModelParams& m = cfg.model;
  solvers::SolverSettings& s = cfg.solver;
  if (key == "omega_rabi") m.omega_rabi = to_double(v);
  else if (key == "delta1") m.delta1 = to_double(v);
  else if (key == "omega12") m.omega12 = to_double(v);
  else if (key == "t_e") m.t_e = to_double(v);
  else if (key == "gamma1") m.gamma1 = to_double(v);
  else if (key == "gamma2") m.gamma2 = to_double(v);
  else if (key == "gamma3") m.gamma3 = to_double(v);
  else if (key == "big_gamma10") m.big_gamma10 = to_double(v);
  else if (key == "big_gamma12") m.big_gamma12 = to_double(v);
  else if (key == "big_gamma20") m.big_gamma20 = to_double(v);
  else if (key == "mode") {
    try {
      m.mode = parse_equation_mode(v);
    } catch (const ValidationError& e) {
      throw BadValue{e.what()};
    }
  }
  else if (key == "dt") s.dt = to_double(v);
  else if (key == "t_max") s.t_max = to_double(v);
  else if (key == "relax_tol") s.relax_tol = to_double(v);
  else if (key == "sample_stride") s.sample_stride = to_count(v);
  else if (key == "sweep_start") cfg.sweep.start = to_double(v);
  else if (key == "sweep_stop") cfg.sweep.stop = to_double(v);
  else if (key == "sweep_count") cfg.sweep.count = to_count(v);
  else if (key == "grid_t_e_start") cfg.grid_t_e.start = to_double(v);
  else if (key == "grid_t_e_stop") cfg.grid_t_e.stop = to_double(v);
  else if (key == "grid_t_e_count") cfg.grid_t_e.count = to_count(v);
  else if (key == "precision") {
    const std::size_t p = to_count(v);
    if (p < 1 || p > 17) throw BadValue{"precision must be between 1 and 17"};
    cfg.precision = static_cast<int>(p);
  }
  else if (key == "omega10") {
    to_double(v);
    return std::string("omega10 is accepted but ignored: the equations depend only on delta1");
  }
  return std::nullopt;
}

bool is_key(std::string_view key) {
  return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

std::string unknown_key_message(std::string_view key) {
  return "unknown key '" + std::string(key) + "' (did you mean '" +
         std::string(nearest_key(key)) + "'?)";
}

void validate_config(const RunConfig& cfg) {
  try {
    validate(cfg.model);
    solvers::validate(cfg.solver);
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  if (!(cfg.sweep.start < cfg.sweep.stop)) {
    throw ConfigError("sweep_start must be smaller than sweep_stop");
  }
  if (cfg.sweep.count < 2) throw ConfigError("sweep_count must be at least 2");
  if (!(cfg.grid_t_e.start < cfg.grid_t_e.stop)) {
    throw ConfigError("grid_t_e_start must be smaller than grid_t_e_stop");
  }
  if (cfg.grid_t_e.count < 2) throw ConfigError("grid_t_e_count must be at least 2");
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::steady:
      return "steady";
    case Command::evolve:
      return "evolve";
    case Command::spectrum:
      return "spectrum";
    case Command::sweep_te:
      return "sweep-te";
    case Command::sweep_omega:
      return "sweep-omega";
    case Command::grid:
      return "grid";
  }
  return "steady";
}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::steady, Command::evolve, Command::spectrum, Command::sweep_te,
                    Command::sweep_omega, Command::grid}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

RunConfig default_config(Command command) {
  RunConfig cfg;
  if (command == Command::sweep_te || command == Command::sweep_omega) {
    cfg.sweep = {0.0, 2.0, 401};
  }
  return cfg;
}

std::span<const std::string_view> config_keys() { return kKeys; }

std::string_view nearest_key(std::string_view key) {
  auto distance = [](std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      cur[0] = i;
      for (std::size_t j = 1; j <= b.size(); ++j) {
        cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                           prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
      }
      std::swap(prev, cur);
    }
    return prev[b.size()];
  };
  std::string_view best = kKeys.front();
  std::size_t best_d = distance(key, best);
  for (std::string_view k : kKeys) {
    const std::size_t d = distance(key, k);
    if (d < best_d) {
      best = k;
      best_d = d;
    }
  }
  return best;
}

std::string flag_name(std::string_view key) {
  std::string out = "--";
  for (char c : key) out.push_back(c == '_' ? '-' : c);
  return out;
}

ParsedConfig parse_config(std::string_view text, std::span<const Override> flags,
                          Command command) {
  ParsedConfig parsed{default_config(command), {}};
  std::vector<std::pair<std::string, std::string>> from_file;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!is_key(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + unknown_key_message(key));
    }
    for (const auto& [k, _] : from_file) {
      if (k == key) {
        throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      }
    }
    try {
      if (auto warning = assign(parsed.config, key, value)) {
        parsed.notices.push_back("warning: " + *warning);
      }
    } catch (const BadValue& bad) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + bad.reason + " for key '" +
                        key + "'");
    }
    from_file.emplace_back(key, std::string(value));
  }

  for (const Override& flag : flags) {
    if (!is_key(flag.key)) throw ConfigError(unknown_key_message(flag.key));
    try {
      if (auto warning = assign(parsed.config, flag.key, flag.value)) {
        parsed.notices.push_back("warning: " + *warning);
      }
    } catch (const BadValue& bad) {
      throw ConfigError("flag " + flag_name(flag.key) + ": " + bad.reason);
    }
    for (const auto& [k, v] : from_file) {
      if (k == flag.key) {
        parsed.notices.push_back("notice: flag " + flag_name(k) + " " + flag.value +
                                 " overrides config value " + k + " = " + v);
      }
    }
  }

  validate_config(parsed.config);
  return parsed;
}

std::string echo_line(const RunConfig& cfg) {
  const ModelParams& m = cfg.model;
  const solvers::SolverSettings& s = cfg.solver;
  std::string out = "#";
  auto put = [&out](std::string_view key, const std::string& value) {
    out.push_back(' ');
    out.append(key);
    out.push_back('=');
    out.append(value);
  };
  put("omega_rabi", shortest(m.omega_rabi));
  put("delta1", shortest(m.delta1));
  put("omega12", shortest(m.omega12));
  put("t_e", shortest(m.t_e));
  put("gamma1", shortest(m.gamma1));
  put("gamma2", shortest(m.gamma2));
  put("gamma3", shortest(m.gamma3));
  put("big_gamma10", shortest(m.big_gamma10));
  put("big_gamma12", shortest(m.big_gamma12));
  put("big_gamma20", shortest(m.big_gamma20));
  put("mode", std::string(to_string(m.mode)));
  put("dt", shortest(s.dt));
  put("t_max", shortest(s.t_max));
  put("relax_tol", shortest(s.relax_tol));
  put("sample_stride", std::to_string(s.sample_stride));
  put("sweep_start", shortest(cfg.sweep.start));
  put("sweep_stop", shortest(cfg.sweep.stop));
  put("sweep_count", std::to_string(cfg.sweep.count));
  put("grid_t_e_start", shortest(cfg.grid_t_e.start));
  put("grid_t_e_stop", shortest(cfg.grid_t_e.stop));
  put("grid_t_e_count", std::to_string(cfg.grid_t_e.count));
  put("precision", std::to_string(cfg.precision));
  return out;
}

ParsedConfig parse_echo_line(std::string_view line, Command command) {
  line = trim(line);
  if (line.empty() || line.front() != '#') throw ConfigError("echo line must start with '#'");
  line.remove_prefix(1);
  std::string doc;
  while (!line.empty()) {
    line = trim(line);
    const auto sp = line.find(' ');
    doc.append(line.substr(0, sp));
    doc.push_back('\n');
    line = sp == std::string_view::npos ? std::string_view{} : line.substr(sp + 1);
  }
  return parse_config(doc, {}, command);
}

}  // namespace qdsim::cli
