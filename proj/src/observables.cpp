#include "qdsim/observables.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "qdsim/errors.hpp"
#include "qdsim/solvers.hpp"

namespace qdsim::observables {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepRow evaluate_point(const SweepSpec& spec, double value) {
  SweepRow row;
  row.value = value;
  const ModelParams p = with_value(spec.base, spec.parameter, value);
  try {
    const DensityMatrix rho = solvers::steady_state_direct(p);
    row.rho10 = coherence_rho10(rho);
    row.rho00 = rho.population(0);
    row.rho11 = rho.population(1);
    row.rho22 = rho.population(2);
    row.residual = solvers::residual_norm(rho, p);
  } catch (const Error& e) {
    row.rho10 = {kNaN, kNaN};
    row.rho00 = row.rho11 = row.rho22 = row.residual = kNaN;
    row.error = e.what();
  }
  return row;
}

struct Point {
  double x;
  double y;
};

// Walks outward from the first point while y <= threshold and returns the
// x where the linear interpolant first exceeds it (or the last point reached).
double window_edge(const std::vector<Point>& path, double threshold) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Point& in = path[i - 1];
    const Point& out = path[i];
    if (out.y > threshold) {
      return in.x + (threshold - in.y) / (out.y - in.y) * (out.x - in.x);
    }
  }
  return path.back().x;
}

void require_delta1_sweep_covering_zero(const SweepResult& result, const char* what) {
  if (result.parameter != SweptParameter::delta1) {
    throw DomainError(std::string(what) + " requires a delta1 sweep");
  }
  if (result.rows.size() < 2 || result.rows.front().value > 0.0 ||
      result.rows.back().value < 0.0) {
    throw DomainError(std::string(what) + ": delta1 = 0 lies outside the sweep range");
  }
}

}  // namespace

std::string_view to_string(SweptParameter p) {
  switch (p) {
    case SweptParameter::delta1:
      return "delta1";
    case SweptParameter::t_e:
      return "t_e";
    case SweptParameter::omega_rabi:
      return "omega_rabi";
  }
  return "delta1";
}

std::optional<SweptParameter> parse_swept_parameter(std::string_view name) {
  if (name == "delta1") return SweptParameter::delta1;
  if (name == "t_e") return SweptParameter::t_e;
  if (name == "omega_rabi") return SweptParameter::omega_rabi;
  return std::nullopt;
}

ModelParams with_value(ModelParams base, SweptParameter which, double value) {
  switch (which) {
    case SweptParameter::delta1:
      base.delta1 = value;
      break;
    case SweptParameter::t_e:
      base.t_e = value;
      break;
    case SweptParameter::omega_rabi:
      base.omega_rabi = value;
      break;
  }
  return base;
}

std::vector<double> uniform_grid(double start, double stop, std::size_t count) {
  std::vector<double> grid(count);
  const double span = stop - start;
  const auto last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = start + span * static_cast<double>(i) / last;
  }
  grid.back() = stop;
  return grid;
}

void validate(const SweepSpec& spec) {
  if (!std::isfinite(spec.start) || !std::isfinite(spec.stop) || !(spec.start < spec.stop)) {
    throw ValidationError("sweep range must satisfy start < stop");
  }
  if (spec.count < 2) throw ValidationError("sweep count must be at least 2");
  validate(spec.base);
}

std::size_t SweepResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok(); }));
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  validate(spec);
  const std::vector<double> grid = uniform_grid(spec.start, spec.stop, spec.count);

  SweepResult result;
  result.parameter = spec.parameter;
  result.rows.resize(grid.size());

  const unsigned workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(grid.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) result.rows[i] = evaluate_point(spec, grid[i]);
    return result;
  }

  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
          result.rows[i] = evaluate_point(spec, grid[i]);
        }
      });
    }
  }
  return result;
}

double column_value(const SweepRow& row, Column column) {
  switch (column) {
    case Column::re_rho10:
      return row.rho10.real();
    case Column::im_rho10:
      return row.rho10.imag();
    case Column::rho00:
      return row.rho00;
    case Column::rho11:
      return row.rho11;
    case Column::rho22:
      return row.rho22;
    case Column::residual:
      return row.residual;
  }
  return kNaN;
}

std::vector<Extremum> find_local_extrema(const SweepResult& result, Column column) {
  std::vector<Point> pts;
  for (const SweepRow& row : result.rows) {
    if (row.ok()) pts.push_back({row.value, column_value(row, column)});
  }
  std::vector<Extremum> found;
  if (pts.size() < 3) return found;

  int last_sign = 0;
  std::size_t turn = 0;  // first point after the last non-flat step
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    const double d = pts[j + 1].y - pts[j].y;
    const int sign = (d > 0.0) - (d < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) {
      found.push_back({pts[turn].x, pts[turn].y,
                       last_sign < 0 ? ExtremumKind::min : ExtremumKind::max});
    }
    last_sign = sign;
    turn = j + 1;
  }
  return found;
}

TransparencyMetrics transparency_metrics(const SweepResult& result) {
  require_delta1_sweep_covering_zero(result, "transparency metrics");

  std::vector<Point> pts;
  double peak = 0.0;
  for (const SweepRow& row : result.rows) {
    if (!row.ok()) continue;
    pts.push_back({row.value, std::abs(row.rho10.imag())});
    peak = std::max(peak, pts.back().y);
  }
  if (pts.size() < 2 || pts.front().x > 0.0 || pts.back().x < 0.0) {
    throw DomainError("transparency metrics: no valid rows bracket delta1 = 0");
  }

  // Last point with x <= 0.
  const auto upper = std::upper_bound(pts.begin(), pts.end(), 0.0,
                                      [](double v, const Point& p) { return v < p.x; });
  const auto k = static_cast<std::size_t>(std::distance(pts.begin(), upper)) - 1;
  double at_zero = pts[k].y;
  if (pts[k].x < 0.0) {
    const Point& a = pts[k];
    const Point& b = pts[k + 1];
    at_zero = a.y + (0.0 - a.x) / (b.x - a.x) * (b.y - a.y);
  }

  const double threshold = 0.1 * peak;
  TransparencyMetrics m{at_zero, 0.0, threshold};
  if (at_zero > threshold) return m;

  std::vector<Point> left{{0.0, at_zero}};
  for (std::size_t i = k + 1; i-- > 0;) {
    if (pts[i].x < 0.0) left.push_back(pts[i]);
  }
  std::vector<Point> right{{0.0, at_zero}};
  for (std::size_t i = k; i < pts.size(); ++i) {
    if (pts[i].x > 0.0) right.push_back(pts[i]);
  }
  m.window_width = window_edge(right, threshold) - window_edge(left, threshold);
  return m;
}

double dispersion_slope_at_resonance(const SweepResult& result) {
  require_delta1_sweep_covering_zero(result, "dispersion slope");
  const auto& rows = result.rows;
  std::size_t k = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::abs(rows[i].value) < std::abs(rows[k].value)) k = i;
  }
  if (k == 0 || k + 1 == rows.size()) {
    throw DomainError("dispersion slope: point nearest delta1 = 0 is a sweep endpoint");
  }
  return (rows[k + 1].rho10.real() - rows[k - 1].rho10.real()) /
         (rows[k + 1].value - rows[k - 1].value);
}

std::size_t GridResult::failures() const {
  std::size_t n = 0;
  for (const SweepResult& s : spectra) n += s.failures();
  return n;
}

GridResult run_grid(const GridSpec& spec, unsigned threads) {
  if (spec.t_e_count < 2 || !(spec.t_e_start < spec.t_e_stop)) {
    throw ValidationError("grid T_e range must satisfy start < stop with count >= 2");
  }
  GridResult grid;
  grid.t_e_values = uniform_grid(spec.t_e_start, spec.t_e_stop, spec.t_e_count);
  grid.spectra.reserve(grid.t_e_values.size());
  for (double te : grid.t_e_values) {
    SweepSpec row_spec;
    row_spec.parameter = SweptParameter::delta1;
    row_spec.start = spec.delta1_start;
    row_spec.stop = spec.delta1_stop;
    row_spec.count = spec.delta1_count;
    row_spec.base = with_value(spec.base, SweptParameter::t_e, te);
    grid.spectra.push_back(run_sweep(row_spec, threads));
  }
  return grid;
}

}  // namespace qdsim::observables
