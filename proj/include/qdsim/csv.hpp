#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qdsim/config.hpp"
#include "qdsim/observables.hpp"
#include "qdsim/solvers.hpp"

namespace qdsim::cli {

struct IoError : Error {
  using Error::Error;
};

/// Scientific notation with `significant_digits` digits and an unpadded
/// exponent: -0.049261 at 3 digits is "-4.93e-2", 1 is "1.00e0".
std::string format_scientific(double value, int significant_digits);

// Each document is: "# qdsim v1", the config echo line, the column header, then
// one line per row, all LF-terminated.
std::string sweep_csv(const observables::SweepResult& result, const RunConfig& cfg);
std::string trajectory_csv(const solvers::Trajectory& traj, const RunConfig& cfg);
std::string grid_csv(const observables::GridResult& grid, const RunConfig& cfg);

/// Throws IoError if the file cannot be written completely.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace qdsim::cli
