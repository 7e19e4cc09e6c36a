#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "gnls/grid.hpp"

namespace gnls {

using cplx = std::complex<double>;

enum class Direction { Forward, Inverse };

/// Unitary discrete Fourier transform on the grid, scaled to approximate
///   u^(xi) = (2 pi)^{-n/2} \int u(x) e^{-i xi.x} dx.
/// Forward maps physical samples to the frequency lattice (FFT order);
/// Inverse maps back. Plancherel holds with weights cell_volume() and
/// freq_cell_volume() respectively.
std::vector<cplx> transform(const Grid& grid, std::span<const cplx> data, Direction dir);

/// Unnormalized multidimensional DFT (FFTW sign convention: Forward uses
/// e^{-2 pi i jk/N}) on an arbitrary shape, row-major; no parity or scaling.
std::vector<cplx> raw_dft(int dim, const std::array<int, 3>& shape, std::span<const cplx> data,
                          Direction dir);

/// Complex field on a periodic grid carrying both representations.
///
/// Both arrays are kept in sync eagerly: every factory and mutator runs the
/// transform, so physical() and spectrum() are always current and a Field is
/// safe to read from several threads.
class Field {
 public:
  Field() = default;

  static Field zeros(const Grid& grid);
  static Field from_physical(const Grid& grid, std::vector<cplx> values);
  static Field from_spectrum(const Grid& grid, std::vector<cplx> spectrum);
  /// Samples fn at every physical grid point.
  static Field sample(const Grid& grid, const std::function<cplx(const std::array<double, 3>&)>& fn);
  /// Samples fn at every lattice frequency.
  static Field sample_spectrum(const Grid& grid,
                               const std::function<cplx(const std::array<double, 3>&)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return physical_.size(); }
  std::span<const cplx> physical() const noexcept { return physical_; }
  std::span<const cplx> spectrum() const noexcept { return spectrum_; }

  /// The Nyquist-zeroed copy (spectral bins with any index at N_a/2 cleared).
  Field without_nyquist() const;
  Field scaled(cplx factor) const;
  /// Pointwise modulus in physical space.
  std::vector<double> modulus() const;
  /// Modulus of the spectrum.
  std::vector<double> spectral_modulus() const;

 private:
  Field(Grid grid, std::vector<cplx> physical, std::vector<cplx> spectrum)
      : grid_(std::move(grid)), physical_(std::move(physical)), spectrum_(std::move(spectrum)) {}

  Grid grid_;
  std::vector<cplx> physical_;
  std::vector<cplx> spectrum_;
};

/// Physical-space L^2 norm (rectangle rule).
double norm_L2(const Field& f);
/// Same norm evaluated on the spectrum; equals norm_L2 by Plancherel.
double norm_L2_spectral(const Field& f);
/// L^p norm for p in {2, 4, 6, ...} or p = infinity; other p throw InvalidArgument.
double norm_Lp(const Field& f, double p);
/// \int |u|^p dx for even p (no root taken).
double integral_abs_pow(const Field& f, int p);
/// Spectral H^s norm: sum (1 + |xi|^2)^s |u^|^2 dxi, square-rooted.
double norm_Hs(const Field& f, double s);

/// Circular centroid of |f|^2 per axis, in (-L, L]; unused axes are 0.
std::array<double, 3> centroid(const Field& f);
/// x -> f(x - shift), applied as a spectral phase (shift need not be on the lattice).
Field translated(const Field& f, std::span<const double> shift);
/// x -> f(-x) on the grid (index j -> (N - j) mod N per axis).
Field reflected(const Field& f);
/// x -> conj(f(-x)).
Field conj_reflected(const Field& f);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace gnls
