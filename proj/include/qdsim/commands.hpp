#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "qdsim/config.hpp"

namespace qdsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitPartialFailure = 2;

struct OutputOptions {
  std::optional<std::filesystem::path> out;  ///< CSV destination; `out` stream when empty
  unsigned threads = 1;
};

/// Runs one subcommand. Results go to `options.out` (or `out`), every
/// diagnostic to `err`. Returns 0 on success, 2 when a solve or some sweep
/// points failed, 1 on configuration or I/O errors.
int run_command(const RunConfig& cfg, Command command, const OutputOptions& options,
                std::ostream& out, std::ostream& err);

}  // namespace qdsim::cli
