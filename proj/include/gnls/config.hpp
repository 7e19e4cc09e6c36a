#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gnls/solver.hpp"
#include "gnls/verify.hpp"

namespace gnls {

struct SymbolSpec {
  std::string kind = "fractional";
  double s = 1.0;
  double mu = 0.0;
  double m = 0.0;
  double gamma = 1.0;
  int split = 1;
};

struct SweepSpec {
  std::string param;  // "v" or "omega"
  double from = 0.0;
  double to = 0.0;
  int count = 0;
};

/// Everything a run needs. Parsed from an INI-style file:
///
///   [problem]  symbol, s, mu, m, gamma, split, v, omega, sigma, axis
///   [grid]     n, N (or sizes), L
///   [solver]   tol, max_iter, width, boost_phase
///   [verify]   tau, s1, s2, modrearr, minkowski, phase_residual
///   [sweep]    param, from, to, count
///   [run]      seed, out
///
/// Lists are comma separated; a number may carry a trailing `pi` (`20pi`).
struct RunConfig {
  SymbolSpec symbol;
  std::vector<double> v;
  double omega = 1.0;
  int sigma = 1;
  int axis = 0;
  int dim = 1;
  std::vector<int> sizes{1024};
  std::vector<double> half_lengths;
  SolveOptions solver;
  SymmetryThresholds thresholds;
  SweepSpec sweep;
  std::uint64_t seed = 1;
  std::string out_dir = ".";

  Symbol make_symbol() const;
  /// v padded to the grid dimension; a single value is a speed along `axis`.
  std::vector<double> velocity() const;
  Grid make_grid() const;
  /// Validated problem; throws HypothesisViolated or InvalidArgument.
  Problem make_problem() const;
};

/// Throws ConfigError carrying the offending line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Parses `1.5`, `-2e-3`, `20pi`, `pi`, `0.5pi`. Throws InvalidArgument.
double parse_number(const std::string& text);

}  // namespace gnls
