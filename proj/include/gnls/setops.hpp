#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace gnls {

/// Open interval (lo, hi); lo may be -inf and hi may be +inf.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Interval&) const = default;
};

/// Finite union of open intervals of the real line in canonical form:
/// nonempty, sorted, with hi_i <= lo_{i+1}. Touching intervals such as
/// (0,1) and (1,2) stay separate because the shared endpoint is excluded.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  /// Canonicalizes: drops empty pieces, sorts and merges overlaps.
  explicit IntervalUnion(std::vector<Interval> pieces);

  static IntervalUnion empty() { return {}; }
  static IntervalUnion real_line();
  static IntervalUnion positive();
  static IntervalUnion negative();
  /// Open ball (center - r, center + r).
  static IntervalUnion ball(double center, double radius);

  const std::vector<Interval>& intervals() const noexcept { return pieces_; }
  bool is_empty() const noexcept { return pieces_.empty(); }
  bool is_bounded() const noexcept;
  bool contains(double x) const;
  /// Lebesgue measure (may be infinite).
  double measure() const;
  double inf() const;
  double sup() const;

  bool operator==(const IntervalUnion&) const = default;
  bool subset_of(const IntervalUnion& other) const;

 private:
  std::vector<Interval> pieces_;
};

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);
/// Measure of the symmetric difference up to endpoints.
double symmetric_difference_measure(const IntervalUnion& a, const IntervalUnion& b);

/// { x + y : x in X, y in Y }.
IntervalUnion minkowski_sum(const IntervalUnion& x, const IntervalUnion& y);
/// m-fold sum X + ... + X by repeated squaring; m >= 1.
IntervalUnion minkowski_power(const IntervalUnion& x, int m);
/// True iff the m-fold sum equals X (m >= 2). The empty set is a fixed point.
bool is_fixed_point(const IntervalUnion& x, int m);

/// Text form: `(1,2)|(5,6)`, `(0,inf)`, `(-inf,0)`, `R`, and `{}` for the empty set.
IntervalUnion parse_interval_union(const std::string& text);
std::string to_string(const IntervalUnion& x);

using UnionSampler = std::function<IntervalUnion(std::mt19937_64&)>;

/// Up to max_pieces bounded intervals with dyadic endpoints in [-8, 8].
IntervalUnion random_bounded_union(std::mt19937_64& rng, int max_pieces = 5);
/// Mixture of bounded unions, rays, half-lines and the three canonical sets.
IntervalUnion random_mixed_union(std::mt19937_64& rng);

struct FixedPointSummary {
  int trials = 0;
  int fixed_points = 0;
  /// Fixed points equal to (0, inf), (-inf, 0) or R.
  int canonical = 0;
  /// Nonempty fixed points that are none of the canonical sets.
  std::vector<IntervalUnion> violations;
};

FixedPointSummary classify_fixed_points(const UnionSampler& sampler, int m, int trials,
                                        std::uint64_t seed);

bool is_canonical_fixed_set(const IntervalUnion& x);

}  // namespace gnls
