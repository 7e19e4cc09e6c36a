#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "gnls/config.hpp"

namespace gnls {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitNotConverged = 2,
  kExitDisconnected = 3,
  kExitPropertyFailure = 4,
};

/// Command-line flags that override the configuration file.
struct CliOverrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

void apply_overrides(RunConfig& cfg, const CliOverrides& o);

/// Writes Q.gnf, trace.csv and report.txt into cfg.out_dir.
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
/// Writes symmetry.csv for the field file; exit 0 iff every threshold passes.
int cmd_verify(const RunConfig& cfg, const std::string& field_path, std::ostream& out, std::ostream& err);
/// mode: sharp, sharp_e, bullet, schwarz or steiner. Writes rearranged.gnf.
int cmd_rearrange(const RunConfig& cfg, const std::string& field_path, const std::string& mode,
                  std::ostream& out, std::ostream& err);
/// Solves along cfg.sweep with up to `jobs` concurrent solves; writes sweep.csv.
int cmd_sweep(const RunConfig& cfg, int jobs, std::ostream& out, std::ostream& err);
/// suite: rearrange, convolution, setops or all.
int cmd_props(std::uint64_t seed, const std::string& suite, std::ostream& out, std::ostream& err);
/// Prints Sigma_v for the configured boosted symbol.
int cmd_sigma(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Text shown at the end of --help.
std::string exit_code_help();

}  // namespace gnls
