#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnls/field.hpp"

namespace gnls {

enum class SymbolKind { Fractional, Biharmonic, SqrtKleinGordon, HalfWave, AnisotropicHWS, Custom };

std::string to_string(SymbolKind kind);

/// Real Fourier multiplier p(xi) of the dispersion operator P(D), together
/// with the constants of its two-sided bound
///
///   A |xi|^{2s} + c  <=  p(xi)  <=  B |xi|^{2s} + upper_offset
///
/// and the coordinate axis about which it is cylindrically symmetric.
/// The built-in kinds fill in valid constants; custom symbols supply their own.
class Symbol {
 public:
  using Callable = std::function<double(std::span<const double>)>;

  /// p = |xi|^{2s}.
  static Symbol fractional(double s);
  /// p = |xi|^4 - mu |xi|^2  (operator Delta^2 + mu Delta).
  static Symbol biharmonic(double mu);
  /// p = sqrt(|xi|^2 + m^2).
  static Symbol sqrt_klein_gordon(double m);
  /// p = |xi|.
  static Symbol half_wave();
  /// p = |xi_x|^2 + gamma |xi_y| with xi_x the first `split` coordinates.
  static Symbol anisotropic_hws(double gamma, int split = 1);
  static Symbol custom(std::string name, Callable fn, double order, double A, double B, double c,
                       double upper_offset = 0.0, int axis = 0);

  SymbolKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  double order() const noexcept { return order_; }
  double A() const noexcept { return A_; }
  double B() const noexcept { return B_; }
  double c() const noexcept { return c_; }
  double upper_offset() const noexcept { return upper_offset_; }
  int axis() const noexcept { return axis_; }
  /// Kind parameter: s, mu, m or gamma (0 for half-wave and custom).
  double parameter() const noexcept { return param_; }
  int split() const noexcept { return split_; }

  Symbol with_axis(int axis) const;
  Symbol with_bounds(double A, double B, double c, double upper_offset) const;

  /// Unchecked evaluation; xi.size() is the space dimension.
  double value(std::span<const double> xi) const;

 private:
  SymbolKind kind_ = SymbolKind::Fractional;
  std::string name_;
  double order_ = 1.0;
  double A_ = 1.0, B_ = 1.0, c_ = 0.0, upper_offset_ = 0.0;
  int axis_ = 0;
  double param_ = 1.0;
  int split_ = 1;
  Callable custom_;
};

/// Boosted symbol p_v(xi) = p(xi) - v.xi.
struct BoostedSymbol {
  Symbol base;
  std::vector<double> v;

  double value(std::span<const double> xi) const;
  double speed() const;
};

/// p(xi) with input validation: throws InvalidArgument on non-finite xi.
double eval_symbol(const Symbol& sym, std::span<const double> xi);

struct ValidationGrid {
  int points_per_axis = 64;
  double extent = 16.0;
  int random_points = 256;
  std::uint64_t seed = 12345;
};

struct AssumptionReport {
  bool ass1_ok = true;
  bool ass2_ok = true;
  /// First violating frequency, if any check failed.
  std::optional<std::vector<double>> witness;
  std::string detail;
};

/// Sampled check of the two-sided bound (ass1) and of cylindrical symmetry
/// with strictly increasing transverse radial profiles (ass2). Never throws.
/// In one dimension the transverse condition is vacuous.
AssumptionReport check_assumptions(const Symbol& sym, int dim, const ValidationGrid& grid = {});

struct SigmaSearch {
  /// Values below this are treated as evidence of an unbounded infimum.
  double floor = -1e12;
  double max_extent = 1e8;
  int scan_points = 4001;
  double tolerance = 1e-12;
};

/// Sigma_v = inf_xi { p(xi) - v.xi }.
///
/// The search runs on the line xi = t d, with d = v/|v| (or the symmetry axis
/// when v = 0): for a symbol cylindrically symmetric about v the transverse
/// part of the minimizer vanishes. The line is bracketed by doubling until
/// the objective grows at both ends, scanned, and refined by golden section.
/// Throws HypothesisViolated for order < 1/2, or order 1/2 with |v| >= A;
/// throws UnboundedBelow when the objective drops below search.floor.
double sigma_v(const BoostedSymbol& bsym, const SigmaSearch& search = {});

/// Galilean boost x -> e^{(i/2) v.x} Q(x).
Field galilean_gauge(const Field& q, std::span<const double> v);

}  // namespace gnls
