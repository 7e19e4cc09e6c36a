#include "gnls/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "gnls/error.hpp"

namespace gnls {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (shape, sign) and kept for the
// lifetime of the process.
class PlanCache {
 public:
  fftw_plan get(int dim, std::array<int, Grid::kMaxDim> shape, int sign) {
    for (int a = dim; a < Grid::kMaxDim; ++a) shape[a] = 1;
    const Key key{dim, shape, sign};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = static_cast<std::size_t>(shape[0]) * shape[1] * shape[2];
    std::vector<cplx> in(total), out(total);
    fftw_plan plan = fftw_plan_dft(dim, shape.data(), reinterpret_cast<fftw_complex*>(in.data()),
                                   reinterpret_cast<fftw_complex*>(out.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  using Key = std::tuple<int, std::array<int, Grid::kMaxDim>, int>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// (-1)^(k_0 + ... + k_{n-1}) for the index multi-index of a linear offset.
// This is the phase e^{-i xi_k (-L)} produced by the box starting at -L.
template <class Fn>
void for_each_parity(const Grid& grid, Fn&& fn) {
  const int n = grid.dim();
  const int n0 = grid.size(0);
  const int n1 = n > 1 ? grid.size(1) : 1;
  const int n2 = n > 2 ? grid.size(2) : 1;
  std::size_t off = 0;
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n1; ++j) {
      for (int k = 0; k < n2; ++k, ++off) fn(off, ((i + j + k) & 1) != 0);
    }
  }
}

}  // namespace

std::vector<cplx> transform(const Grid& grid, std::span<const cplx> data, Direction dir) {
  if (data.size() != grid.total()) {
    throw InvalidArgument("transform: data size does not match grid " + grid.describe());
  }
  const bool forward = dir == Direction::Forward;
  double scale = 1.0;
  for (int a = 0; a < grid.dim(); ++a) {
    scale *= (forward ? grid.dx(a) : grid.dxi(a)) / std::sqrt(2.0 * std::numbers::pi);
  }

  std::vector<cplx> in(data.begin(), data.end());
  std::vector<cplx> out(grid.total());
  if (!forward) {
    for_each_parity(grid, [&](std::size_t off, bool odd) {
      if (odd) in[off] = -in[off];
    });
  }
  std::array<int, Grid::kMaxDim> shape{1, 1, 1};
  for (int a = 0; a < grid.dim(); ++a) shape[a] = grid.size(a);
  fftw_plan plan = plan_cache().get(grid.dim(), shape, forward ? FFTW_FORWARD : FFTW_BACKWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  for_each_parity(grid, [&](std::size_t off, bool odd) {
    const double s = (forward && odd) ? -scale : scale;
    out[off] *= s;
  });
  return out;
}

std::vector<cplx> raw_dft(int dim, const std::array<int, 3>& shape, std::span<const cplx> data,
                          Direction dir) {
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) {
    if (shape[a] < 1) throw InvalidArgument("raw_dft: nonpositive extent");
    total *= static_cast<std::size_t>(shape[a]);
  }
  if (data.size() != total) throw InvalidArgument("raw_dft: data size does not match shape");
  std::vector<cplx> in(data.begin(), data.end()), out(total);
  fftw_plan plan = plan_cache().get(dim, shape, dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

Field Field::zeros(const Grid& grid) {
  return Field(grid, std::vector<cplx>(grid.total()), std::vector<cplx>(grid.total()));
}

Field Field::from_physical(const Grid& grid, std::vector<cplx> values) {
  auto spec = transform(grid, values, Direction::Forward);
  return Field(grid, std::move(values), std::move(spec));
}

Field Field::from_spectrum(const Grid& grid, std::vector<cplx> spectrum) {
  auto phys = transform(grid, spectrum, Direction::Inverse);
  return Field(grid, std::move(phys), std::move(spectrum));
}

Field Field::sample(const Grid& grid, const std::function<cplx(const std::array<double, 3>&)>& fn) {
  std::vector<cplx> v(grid.total());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.point(i));
  return from_physical(grid, std::move(v));
}

Field Field::sample_spectrum(const Grid& grid,
                             const std::function<cplx(const std::array<double, 3>&)>& fn) {
  std::vector<cplx> v(grid.total());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.frequency(i));
  return from_spectrum(grid, std::move(v));
}

Field Field::without_nyquist() const {
  std::vector<cplx> spec = spectrum_;
  bool touched = false;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (grid_.on_nyquist(i) && spec[i] != cplx{}) {
      spec[i] = cplx{};
      touched = true;
    }
  }
  if (!touched) return *this;
  return from_spectrum(grid_, std::move(spec));
}

Field Field::scaled(cplx factor) const {
  Field out = *this;
  for (auto& z : out.physical_) z *= factor;
  for (auto& z : out.spectrum_) z *= factor;
  return out;
}

std::vector<double> Field::modulus() const {
  std::vector<double> m(physical_.size());
  std::transform(physical_.begin(), physical_.end(), m.begin(), [](cplx z) { return std::abs(z); });
  return m;
}

std::vector<double> Field::spectral_modulus() const {
  std::vector<double> m(spectrum_.size());
  std::transform(spectrum_.begin(), spectrum_.end(), m.begin(), [](cplx z) { return std::abs(z); });
  return m;
}

double norm_L2(const Field& f) {
  double sum = 0.0;
  for (cplx z : f.physical()) sum += std::norm(z);
  return std::sqrt(sum * f.grid().cell_volume());
}

double norm_L2_spectral(const Field& f) {
  double sum = 0.0;
  for (cplx z : f.spectrum()) sum += std::norm(z);
  return std::sqrt(sum * f.grid().freq_cell_volume());
}

double integral_abs_pow(const Field& f, int p) {
  if (p < 2 || p % 2 != 0) {
    throw InvalidArgument("integral_abs_pow: exponent must be an even integer >= 2");
  }
  const int half = p / 2;
  double sum = 0.0;
  for (cplx z : f.physical()) {
    const double a = std::norm(z);
    double term = a;
    for (int i = 1; i < half; ++i) term *= a;
    sum += term;
  }
  return sum * f.grid().cell_volume();
}

double norm_Lp(const Field& f, double p) {
  if (std::isinf(p) && p > 0) {
    double m = 0.0;
    for (cplx z : f.physical()) m = std::max(m, std::abs(z));
    return m;
  }
  if (!(p >= 2.0) || p != std::floor(p) || static_cast<long>(p) % 2 != 0) {
    throw InvalidArgument("norm_Lp: p must be an even integer >= 2 or infinity");
  }
  const double integral = integral_abs_pow(f, static_cast<int>(p));
  return std::pow(integral, 1.0 / p);
}

double norm_Hs(const Field& f, double s) {
  const Grid& g = f.grid();
  double sum = 0.0;
  const auto spec = f.spectrum();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto xi = g.frequency(i);
    const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    const double w = s == 0.0 ? 1.0 : std::pow(1.0 + k2, s);
    sum += w * std::norm(spec[i]);
  }
  return std::sqrt(sum * g.freq_cell_volume());
}

std::array<double, 3> centroid(const Field& f) {
  const Grid& g = f.grid();
  std::array<cplx, 3> acc{};
  const auto phys = f.physical();
  for (std::size_t i = 0; i < phys.size(); ++i) {
    const double w = std::norm(phys[i]);
    const auto x = g.point(i);
    for (int a = 0; a < g.dim(); ++a) acc[a] += w * std::polar(1.0, std::numbers::pi * x[a] / g.half_length(a));
  }
  std::array<double, 3> c{};
  for (int a = 0; a < g.dim(); ++a) {
    if (std::abs(acc[a]) > 0.0) c[a] = std::arg(acc[a]) * g.half_length(a) / std::numbers::pi;
  }
  return c;
}

Field translated(const Field& f, std::span<const double> shift) {
  const Grid& g = f.grid();
  if (static_cast<int>(shift.size()) != g.dim()) {
    throw InvalidArgument("translated: shift dimension does not match the grid");
  }
  std::vector<cplx> spec(f.spectrum().begin(), f.spectrum().end());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto xi = g.frequency(i);
    double phase = 0.0;
    for (int a = 0; a < g.dim(); ++a) phase -= xi[a] * shift[a];
    spec[i] *= std::polar(1.0, phase);
  }
  return Field::from_spectrum(g, std::move(spec));
}

namespace {

std::vector<cplx> reflect_values(const Grid& g, std::span<const cplx> v) {
  std::vector<cplx> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto idx = g.unravel(i);
    for (int a = 0; a < g.dim(); ++a) idx[a] = (g.size(a) - idx[a]) % g.size(a);
    out[g.ravel(idx)] = v[i];
  }
  return out;
}

}  // namespace

Field reflected(const Field& f) { return Field::from_physical(f.grid(), reflect_values(f.grid(), f.physical())); }

Field conj_reflected(const Field& f) {
  auto v = reflect_values(f.grid(), f.physical());
  for (auto& z : v) z = std::conj(z);
  return Field::from_physical(f.grid(), std::move(v));
}

}  // namespace gnls
