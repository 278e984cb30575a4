#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdsim/density_matrix.hpp"
#include "qdsim/params.hpp"

namespace qdsim::observables {

/// rho10 = conj(rho01). Im is read as absorption (negative = gain), Re as dispersion.
inline complex coherence_rho10(const DensityMatrix& rho) { return std::conj(rho.rho01()); }

enum class SweptParameter { delta1, t_e, omega_rabi };

std::string_view to_string(SweptParameter p);
std::optional<SweptParameter> parse_swept_parameter(std::string_view name);

/// Returns `base` with the swept field replaced by `value`.
ModelParams with_value(ModelParams base, SweptParameter which, double value);

/// Uniform grid start + (stop - start) * i / (count - 1); endpoints exact.
std::vector<double> uniform_grid(double start, double stop, std::size_t count);

struct SweepSpec {
  SweptParameter parameter = SweptParameter::delta1;
  double start = -10.0;
  double stop = 10.0;
  std::size_t count = 401;
  ModelParams base;
};

void validate(const SweepSpec& spec);

struct SweepRow {
  double value = 0.0;
  complex rho10;
  double rho00 = 0.0;
  double rho11 = 0.0;
  double rho22 = 0.0;
  double residual = 0.0;
  std::string error;  ///< empty when the steady-state solve succeeded

  bool ok() const { return error.empty(); }
  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  SweptParameter parameter = SweptParameter::delta1;
  std::vector<SweepRow> rows;

  std::size_t failures() const;
};

/// Steady state (direct solve) at every grid point.
///
/// Points are independent and are spread over `threads` workers; rows are
/// always stored in grid order, so the result does not depend on `threads`.
/// A failing point keeps its swept value, carries NaN observables and the
/// solver message, and does not stop the sweep.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1);

enum class Column { re_rho10, im_rho10, rho00, rho11, rho22, residual };

double column_value(const SweepRow& row, Column column);

enum class ExtremumKind { min, max };

struct Extremum {
  double swept_value;
  double value;
  ExtremumKind kind;
};

/// Interior grid points where the sign of the discrete first difference flips.
/// On a flat run the extremum is placed at its smallest swept value; endpoints
/// and failed rows are never reported.
std::vector<Extremum> find_local_extrema(const SweepResult& result, Column column);

struct TransparencyMetrics {
  double value_at_resonance;  ///< |Im rho10| linearly interpolated at delta1 = 0
  double window_width;        ///< width of the interval around 0 with |Im rho10| <= threshold
  double threshold;           ///< 0.1 * max |Im rho10| over the sweep
};

/// Throws DomainError unless the sweep is over delta1 and covers 0.
TransparencyMetrics transparency_metrics(const SweepResult& result);

/// Central difference of Re rho10 at the grid point nearest delta1 = 0.
double dispersion_slope_at_resonance(const SweepResult& result);

/// Delta1 x T_e map of steady-state observables, T_e major.
struct GridSpec {
  ModelParams base;
  double delta1_start = -10.0, delta1_stop = 10.0;
  std::size_t delta1_count = 401;
  double t_e_start = 0.0, t_e_stop = 10.0;
  std::size_t t_e_count = 51;
};

struct GridResult {
  std::vector<double> t_e_values;
  std::vector<SweepResult> spectra;  ///< one delta1 sweep per T_e value

  std::size_t failures() const;
};

GridResult run_grid(const GridSpec& spec, unsigned threads = 1);

}  // namespace qdsim::observables
