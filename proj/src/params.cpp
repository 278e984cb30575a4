#include "qdsim/params.hpp"

#include <cmath>
#include <sstream>

#include "qdsim/errors.hpp"

namespace qdsim {

std::string_view to_string(EquationMode mode) {
  switch (mode) {
    case EquationMode::corrected:
      return "corrected";
    case EquationMode::verbatim:
      return "verbatim";
  }
  return "corrected";
}

EquationMode parse_equation_mode(std::string_view text) {
  if (text == "corrected") return EquationMode::corrected;
  if (text == "verbatim") return EquationMode::verbatim;
  throw ValidationError("unknown equation mode '" + std::string(text) +
                        "' (expected 'corrected' or 'verbatim')");
}

void validate(const ModelParams& p) {
  const std::pair<const char*, double> fields[] = {
      {"omega_rabi", p.omega_rabi}, {"delta1", p.delta1},
      {"omega12", p.omega12},       {"t_e", p.t_e},
      {"gamma1", p.gamma1},         {"gamma2", p.gamma2},
      {"gamma3", p.gamma3},         {"big_gamma10", p.big_gamma10},
      {"big_gamma12", p.big_gamma12}, {"big_gamma20", p.big_gamma20},
  };
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) {
      throw ValidationError(std::string("parameter ") + name + " is not finite");
    }
  }
  // Fields from gamma1 on are decay rates.
  for (std::size_t i = 4; i < std::size(fields); ++i) {
    if (fields[i].second < 0.0) {
      throw ValidationError(std::string("decay rate ") + fields[i].first +
                            " must be non-negative");
    }
  }
}

std::string describe(const ModelParams& p) {
  std::ostringstream os;
  os << "omega_rabi=" << p.omega_rabi << " delta1=" << p.delta1
     << " omega12=" << p.omega12 << " t_e=" << p.t_e << " gamma1=" << p.gamma1
     << " gamma2=" << p.gamma2 << " gamma3=" << p.gamma3
     << " big_gamma10=" << p.big_gamma10 << " big_gamma12=" << p.big_gamma12
     << " big_gamma20=" << p.big_gamma20 << " mode=" << to_string(p.mode);
  return os.str();
}

}  // namespace qdsim
