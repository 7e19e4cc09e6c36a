#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gnls/field.hpp"

namespace gnls {

enum class Space { Physical, Frequency };

/// Distance ordering of grid points, grouped into slices.
///
/// With axis < 0 the whole grid is one slice ordered by |x| (Schwarz).
/// With axis = e each slice fixes the coordinate along e and is ordered by
/// the transverse distance (Steiner in n-1 codimensions). Physical space
/// measures distance from x = 0; frequency space from xi = 0 on the signed
/// lattice. Equal distances are broken by the signed multi-index compared
/// lexicographically under 0 < +1 < -1 < +2 < -2 < ...
class RearrangementPlan {
 public:
  RearrangementPlan(const Grid& grid, int axis, Space space);

  const Grid& grid() const noexcept { return grid_; }
  int axis() const noexcept { return axis_; }
  Space space() const noexcept { return space_; }
  std::size_t slice_count() const noexcept { return starts_.size() - 1; }
  /// Offsets of slice k, nearest first.
  std::span<const std::size_t> slice(std::size_t k) const;
  /// Squared distance used for ordering, per offset.
  double distance2(std::size_t offset) const { return dist2_[offset]; }

  /// Sort-and-assign rearrangement of nonnegative values. Throws
  /// InvalidArgument on negative or non-finite input.
  std::vector<double> apply(std::span<const double> values) const;

 private:
  Grid grid_;
  int axis_;
  Space space_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> starts_;
  std::vector<double> dist2_;
};

/// Values sorted descending, assigned to positions order[0], order[1], ...
/// `order` must be a permutation of 0..values.size()-1.
std::vector<double> schwarz(std::span<const double> values, std::span<const std::size_t> order);

/// |f| rearranged with Schwarz symmetrization in physical space.
Field schwarz(const Field& f);
/// |f| Steiner-symmetrized in the codimensions transverse to `axis`. Needs n >= 2.
Field steiner_codim(const Field& f, int axis);

enum class FourierMode { Sharp, SharpAxis, Bullet };

/// Replaces the spectrum by the Schwarz rearrangement of |f^| (Sharp), its
/// Steiner rearrangement about `axis` (SharpAxis, n >= 2) or |f^| (Bullet).
Field fourier_rearrange(const Field& f, FourierMode mode, int axis = 0);

/// Spectral modulus |f^| Steiner-rearranged about `axis` (identity for n = 1).
std::vector<double> rearranged_spectral_modulus(const Field& f, int axis);

struct BochnerResult {
  double min_eigenvalue = 0.0;
  bool pass = false;
};

/// Smallest eigenvalue of the Hermitian part of [f(x_k - x_l)], with f
/// evaluated by trigonometric interpolation. Passes when it is at least
/// -1e-8 |f|_inf. At most 64 points.
BochnerResult bochner_check(const Field& f, const std::vector<std::array<double, 3>>& points);

/// Trigonometric interpolant of f at an arbitrary point.
cplx interpolate(const Field& f, const std::array<double, 3>& x);

}  // namespace gnls
