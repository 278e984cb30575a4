#include "qdsim/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace qdsim::cli {

namespace {

std::string preamble(const RunConfig& cfg, std::string_view columns) {
  std::string out = "# qdsim v1\n";
  out += echo_line(cfg);
  out += '\n';
  out += columns;
  out += '\n';
  return out;
}

void append_sweep_row(std::string& out, const observables::SweepRow& row, int digits) {
  const double cells[] = {row.rho10.real(), row.rho10.imag(), row.rho00,
                          row.rho11,        row.rho22,        row.residual};
  for (double v : cells) {
    out += ',';
    out += format_scientific(v, digits);
  }
  out += '\n';
}

}  // namespace

std::string format_scientific(double value, int significant_digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0

  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific,
                                 significant_digits - 1);
  std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));
  const auto e = text.find('e');
  std::string out(text.substr(0, e + 1));
  std::string_view exponent = text.substr(e + 1);
  if (exponent.front() == '-') out += '-';
  exponent.remove_prefix(1);
  while (exponent.size() > 1 && exponent.front() == '0') exponent.remove_prefix(1);
  out += exponent;
  return out;
}

std::string sweep_csv(const observables::SweepResult& result, const RunConfig& cfg) {
  std::string out = preamble(cfg, std::string(observables::to_string(result.parameter)) +
                                      ",re_rho10,im_rho10,rho00,rho11,rho22,residual");
  for (const auto& row : result.rows) {
    out += format_scientific(row.value, cfg.precision);
    append_sweep_row(out, row, cfg.precision);
  }
  return out;
}

std::string trajectory_csv(const solvers::Trajectory& traj, const RunConfig& cfg) {
  std::string out = preamble(
      cfg, "t,rho00,rho11,rho22,re_rho01,im_rho01,re_rho02,im_rho02,re_rho12,im_rho12");
  for (const auto& sample : traj.samples) {
    out += format_scientific(sample.time, cfg.precision);
    for (double v : sample.state.values) {
      out += ',';
      out += format_scientific(v, cfg.precision);
    }
    out += '\n';
  }
  return out;
}

std::string grid_csv(const observables::GridResult& grid, const RunConfig& cfg) {
  std::string out =
      preamble(cfg, "delta1,t_e,re_rho10,im_rho10,rho00,rho11,rho22,residual");
  for (std::size_t i = 0; i < grid.t_e_values.size(); ++i) {
    const std::string te = format_scientific(grid.t_e_values[i], cfg.precision);
    for (const auto& row : grid.spectra[i].rows) {
      out += format_scientific(row.value, cfg.precision);
      out += ',';
      out += te;
      append_sweep_row(out, row, cfg.precision);
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace qdsim::cli
