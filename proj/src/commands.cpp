#include "qdsim/commands.hpp"

#include <cstdio>
#include <sstream>

#include "qdsim/csv.hpp"
#include "qdsim/observables.hpp"
#include "qdsim/solvers.hpp"

namespace qdsim::cli {

namespace {

using observables::SweptParameter;

std::string fixed(double v, int decimals) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string steady_report(const DensityMatrix& rho, const ModelParams& p, int precision) {
  static constexpr const char* kNames[] = {"rho00",    "rho11",    "rho22",
                                           "re_rho01", "im_rho01", "re_rho02",
                                           "im_rho02", "re_rho12", "im_rho12"};
  const RealStateVector x = to_real(rho);
  std::string out;
  for (std::size_t i = 0; i < kRealDim; ++i) {
    out += kNames[i];
    out += '=';
    out += fixed(x[i], precision);
    out += '\n';
  }
  out += "residual=" + format_scientific(solvers::residual_norm(rho, p), 3) + '\n';
  return out;
}

void emit(const std::string& content, const OutputOptions& options, std::ostream& out) {
  if (options.out) {
    write_file(*options.out, content);
  } else {
    out << content;
    out.flush();
  }
}

void report_failures(const observables::SweepResult& result, std::ostream& err) {
  for (const auto& row : result.rows) {
    if (!row.ok()) {
      err << "error: " << observables::to_string(result.parameter) << '=' << row.value << ": "
          << row.error << '\n';
    }
  }
}

void log_spectrum_features(const observables::SweepResult& result, std::ostream& err) {
  err << "info: Im rho10 minima at delta1 =";
  for (const auto& e : observables::find_local_extrema(result, observables::Column::im_rho10)) {
    if (e.kind == observables::ExtremumKind::min) err << ' ' << e.swept_value;
  }
  err << '\n';
  try {
    const auto m = observables::transparency_metrics(result);
    err << "info: |Im rho10|(0) = " << m.value_at_resonance << ", transparency window width "
        << m.window_width << " (threshold 0.1*max|Im rho10| = " << m.threshold << ")\n";
    err << "info: dispersion slope at resonance "
        << observables::dispersion_slope_at_resonance(result) << '\n';
  } catch (const DomainError& e) {
    err << "info: " << e.what() << '\n';
  }
}

int run_sweep_command(const RunConfig& cfg, SweptParameter parameter,
                      const OutputOptions& options, std::ostream& out, std::ostream& err) {
  observables::SweepSpec spec;
  spec.parameter = parameter;
  spec.start = cfg.sweep.start;
  spec.stop = cfg.sweep.stop;
  spec.count = cfg.sweep.count;
  spec.base = cfg.model;
  const auto result = observables::run_sweep(spec, options.threads);
  emit(sweep_csv(result, cfg), options, out);
  if (parameter == SweptParameter::delta1) log_spectrum_features(result, err);
  if (result.failures() > 0) {
    report_failures(result, err);
    err << "error: " << result.failures() << " of " << result.rows.size()
        << " sweep points failed\n";
    return kExitPartialFailure;
  }
  return kExitOk;
}

}  // namespace

int run_command(const RunConfig& cfg, Command command, const OutputOptions& options,
                std::ostream& out, std::ostream& err) {
  try {
    switch (command) {
      case Command::steady: {
        const DensityMatrix rho = solvers::steady_state_direct(cfg.model);
        emit(steady_report(rho, cfg.model, cfg.precision), options, out);
        return kExitOk;
      }
      case Command::evolve: {
        const auto traj =
            solvers::integrate(DensityMatrix::ground_state(), cfg.model, cfg.solver);
        emit(trajectory_csv(traj, cfg), options, out);
        return kExitOk;
      }
      case Command::spectrum:
        return run_sweep_command(cfg, SweptParameter::delta1, options, out, err);
      case Command::sweep_te:
        return run_sweep_command(cfg, SweptParameter::t_e, options, out, err);
      case Command::sweep_omega:
        return run_sweep_command(cfg, SweptParameter::omega_rabi, options, out, err);
      case Command::grid: {
        observables::GridSpec spec;
        spec.base = cfg.model;
        spec.delta1_start = cfg.sweep.start;
        spec.delta1_stop = cfg.sweep.stop;
        spec.delta1_count = cfg.sweep.count;
        spec.t_e_start = cfg.grid_t_e.start;
        spec.t_e_stop = cfg.grid_t_e.stop;
        spec.t_e_count = cfg.grid_t_e.count;
        const auto grid = observables::run_grid(spec, options.threads);
        emit(grid_csv(grid, cfg), options, out);
        for (const auto& s : grid.spectra) report_failures(s, err);
        return grid.failures() > 0 ? kExitPartialFailure : kExitOk;
      }
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitPartialFailure;
  }
  return kExitConfigError;
}

}  // namespace qdsim::cli
