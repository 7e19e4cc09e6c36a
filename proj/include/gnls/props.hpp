#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gnls {

/// Outcome of one randomized property over many cases.
struct PropertyResult {
  std::string name;
  int cases = 0;
  int violations = 0;
  /// Largest observed value of the checked defect (property-specific scale).
  double worst = 0.0;
  std::string counterexample;
  std::string note;

  bool passed() const noexcept { return cases > 0 && violations == 0; }
};

/// Norm preservation, quadratic-form and L^p monotonicity of the Fourier
/// rearrangements on band-limited random fields over 2D grids.
std::vector<PropertyResult> run_rearrange_suite(std::uint64_t seed, int cases = 200);

/// Multi-convolution at the origin for m = 3 and m = 5 factors.
std::vector<PropertyResult> run_convolution_suite(std::uint64_t seed, int cases = 200);

/// Convolution support identity on lattice masks, the one-dimensional
/// Minkowski fixed-point classification, the ball-sum identity and the
/// algebraic laws of the interval-union sum.
std::vector<PropertyResult> run_setops_suite(std::uint64_t seed, int trials = 10000, int masks = 100);

}  // namespace gnls
