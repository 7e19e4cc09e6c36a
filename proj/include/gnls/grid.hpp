#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace gnls {

/// Uniform periodic grid on the box [-L_a, L_a) per axis, together with its
/// dual frequency lattice of spacing pi / L_a.
///
/// Storage is row-major with axis 0 slowest. Physical index j on axis a sits
/// at x = -L_a + j dx_a, so x = 0 is index N_a / 2. Frequency index k is in
/// FFT order; its signed value is k for k < N_a / 2 and k - N_a otherwise,
/// which puts the single Nyquist mode at -N_a / 2.
class Grid {
 public:
  static constexpr int kMaxDim = 3;

  Grid() = default;
  /// Throws InvalidArgument unless 1 <= n <= 3, every size is a power of two
  /// >= 8, and every half-length is finite and positive.
  Grid(int dim, std::vector<int> sizes, std::vector<double> half_lengths);

  /// Same size and half-length on every axis.
  static Grid cube(int dim, int size, double half_length);

  int dim() const noexcept { return dim_; }
  int size(int axis) const noexcept { return sizes_[axis]; }
  double half_length(int axis) const noexcept { return half_lengths_[axis]; }
  std::size_t total() const noexcept { return total_; }
  std::size_t stride(int axis) const noexcept { return strides_[axis]; }

  double dx(int axis) const noexcept { return 2.0 * half_lengths_[axis] / sizes_[axis]; }
  double dxi(int axis) const noexcept { return std::numbers::pi / half_lengths_[axis]; }
  /// Product of dx over axes (physical quadrature weight).
  double cell_volume() const noexcept;
  /// Product of dxi over axes (frequency quadrature weight).
  double freq_cell_volume() const noexcept;

  double x(int axis, int j) const noexcept { return -half_lengths_[axis] + j * dx(axis); }
  int signed_freq_index(int axis, int k) const noexcept {
    return k < sizes_[axis] / 2 ? k : k - sizes_[axis];
  }
  double xi(int axis, int k) const noexcept { return signed_freq_index(axis, k) * dxi(axis); }
  bool is_nyquist(int axis, int k) const noexcept { return k == sizes_[axis] / 2; }

  /// Multi-index of a linear offset; unused trailing axes are zero.
  std::array<int, kMaxDim> unravel(std::size_t offset) const noexcept;
  std::size_t ravel(const std::array<int, kMaxDim>& idx) const noexcept;

  /// Physical coordinate / frequency of a linear offset.
  std::array<double, kMaxDim> point(std::size_t offset) const noexcept;
  std::array<double, kMaxDim> frequency(std::size_t offset) const noexcept;
  bool on_nyquist(std::size_t offset) const noexcept;

  bool operator==(const Grid& other) const noexcept;

  std::string describe() const;

 private:
  int dim_ = 0;
  std::array<int, kMaxDim> sizes_{1, 1, 1};
  std::array<double, kMaxDim> half_lengths_{1.0, 1.0, 1.0};
  std::array<std::size_t, kMaxDim> strides_{1, 1, 1};
  std::size_t total_ = 0;
};

}  // namespace gnls
