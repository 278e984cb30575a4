#pragma once

#include <string>
#include <string_view>

namespace qdsim {

/// Which form of the tunneling term drives the rho02 coherence.
///
/// `corrected` couples rho02 to rho01 through T_e (the form consistent with a
/// tunneling Hamiltonian between |1> and |2>). `verbatim` keeps the printed
/// `+i T_e rho02` term, which only shifts the rho02 detuning.
enum class EquationMode { corrected, verbatim };

std::string_view to_string(EquationMode mode);
EquationMode parse_equation_mode(std::string_view text);

/// Rates and detunings of the three-level double-dot model.
///
/// Every field is expressed in units of a reference rate gamma, so gamma itself
/// never appears. The defaults are the absorption-spectrum operating point:
/// gamma1 = gamma2 = 1, gamma3 = 0.25, all population decays and the Rabi
/// frequency 0.5, levels |1> and |2> degenerate.
struct ModelParams {
  double omega_rabi = 0.5;   ///< Rabi frequency of the |0> <-> |1> drive
  double delta1 = 0.0;       ///< laser detuning from the |0> <-> |1> transition
  double omega12 = 0.0;      ///< splitting between |1> and |2>
  double t_e = 0.5;          ///< electron tunneling coupling
  double gamma1 = 1.0;       ///< dephasing of rho10
  double gamma2 = 1.0;       ///< dephasing of rho12
  double gamma3 = 0.25;      ///< dephasing of rho20
  double big_gamma10 = 0.5;  ///< population decay |1> -> |0>
  double big_gamma12 = 0.5;  ///< population decay |1> -> |2>
  double big_gamma20 = 0.5;  ///< population decay |2> -> |0>
  EquationMode mode = EquationMode::corrected;

  bool operator==(const ModelParams&) const = default;
};

/// Throws ValidationError unless every field is finite and all decay rates are non-negative.
void validate(const ModelParams& p);

/// Detuning of the |0> <-> |2> coherence: delta1 - omega12.
constexpr double derive_delta2(const ModelParams& p) { return p.delta1 - p.omega12; }

/// Compact one-line rendering used in diagnostics.
std::string describe(const ModelParams& p);

}  // namespace qdsim
