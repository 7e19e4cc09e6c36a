#pragma once

#include <optional>
#include <vector>

#include "gnls/field.hpp"
#include "gnls/symbols.hpp"

namespace gnls {

/// sigma_* = 2s / (n - 2s) for s < n/2, otherwise infinity.
double critical_sigma(double s, int n);

struct Problem {
  BoostedSymbol bsym;
  double omega = 1.0;
  int sigma = 1;
  Grid grid;
  /// inf (p(xi) - v.xi), filled in by make_problem.
  double sigma_v = 0.0;
};

/// Validates and builds a problem. Throws HypothesisViolated when
/// omega <= -Sigma_v, sigma is not subcritical, s < 1/2, or s = 1/2 with
/// |v| >= A; InvalidArgument on a dimension mismatch or sigma < 1.
Problem make_problem(BoostedSymbol bsym, double omega, int sigma, const Grid& grid);

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 5000;
  int max_halvings = 30;
  /// Width of the Gaussian start.
  double width = 1.0;
  /// Multiply the start by e^{i v.x / 2}.
  bool boost_phase = true;
};

struct TraceRow {
  int iter = 0;
  double J = 0.0;
  double residual = 0.0;
  double M = 0.0;
};

struct SolveReport {
  Field Q;
  double J = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<TraceRow> trace;
};

/// J(u) = <u, (P_v + omega) u>^{sigma+1} / |u|_{2 sigma + 2}^{2 sigma + 2}. Throws ZeroField.
double weinstein(const Problem& prob, const Field& u);

struct ElResidual {
  /// |W Q^ - kappa N^| / |W Q^| with the least-squares kappa.
  double relative = 0.0;
  double kappa = 0.0;
  /// Same with kappa = 1.
  double unit = 0.0;
};

/// Defect of P_v(D) Q + omega Q - kappa |Q|^{2 sigma} Q, measured spectrally
/// with N^ = F(|Q|^{2 sigma} Q). Throws ZeroField.
ElResidual el_residual(const Problem& prob, const Field& Q);

/// Centered Gaussian start, optionally carrying the boost phase.
Field initial_guess(const Problem& prob, const SolveOptions& opts = {});

/// Moves the circular centroid of |Q|^2 to the origin and rotates the global
/// phase so that Q^(0) >= 0 (or the largest bin, if Q^(0) vanishes).
Field canonicalize(const Field& Q);

/// Petviashvili iteration
///
///   Q^ <- M^gamma F(|Q|^{2 sigma} Q) / W,  gamma = (2 sigma + 1) / (2 sigma),
///
/// with step halving whenever J grows by more than 1e-12 max(1, J). Stops
/// when el_residual(...).relative < tol, then rescales by kappa^{1/(2 sigma)}
/// and canonicalizes. A run that hits max_iter returns with converged = false.
SolveReport minimize(const Problem& prob, const SolveOptions& opts = {});
SolveReport minimize(const Problem& prob, const Field& init, const SolveOptions& opts = {});

}  // namespace gnls
