#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "isoforge/io.hpp"

namespace isoforge {

/// Settings shared by the subcommands. A config file is a flat JSON object
/// whose keys are flag names without the leading dashes; flags given on the
/// command line win over the file.
struct RunConfig {
  int order = 4;
  std::size_t grid = 512;       ///< Fourier grid for metrics and invariants
  std::size_t samples = 1024;   ///< arc-length resampling of generated curves
  std::size_t scan = 4096;      ///< coarse symmetry scan
  std::size_t eval = 1024;      ///< symmetry residual points
  double tol = 1e-6;
  double floor = 1e-4;
  double epsilon = 0.2;
  std::uint64_t seed = 0;
  int threads = 0;              ///< 0: leave ISOMER_FORGE_THREADS / hardware default

  /// Throws InvalidInput: tolerances > 0, order >= 2, grids powers of two in [64, 8192].
  void validate() const;
  CongruenceOptions congruence() const;
};

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitNumerical = 3 };

/// Runs one subcommand; args excludes the program name. Reports go to `out`,
/// diagnostics and help to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_dispatch(int argc, char** argv);

/// Inserts the flags of a flat JSON config after the subcommand words of args.
std::vector<std::string> inject_config(const std::vector<std::string>& args, const Json& config);

}  // namespace isoforge
