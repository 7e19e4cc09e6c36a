#include "gnls/grid.hpp"

#include <cmath>
#include <sstream>

#include "gnls/error.hpp"

namespace gnls {

Grid::Grid(int dim, std::vector<int> sizes, std::vector<double> half_lengths) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw InvalidArgument("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  }
  if (static_cast<int>(sizes.size()) != dim || static_cast<int>(half_lengths.size()) != dim) {
    throw InvalidArgument("grid needs one size and one half-length per axis");
  }
  for (int a = 0; a < dim; ++a) {
    const int n = sizes[a];
    if (n < 8 || (n & (n - 1)) != 0) {
      throw InvalidArgument("grid sizes must be powers of two >= 8, got " + std::to_string(n));
    }
    if (!std::isfinite(half_lengths[a]) || half_lengths[a] <= 0.0) {
      throw InvalidArgument("grid half-lengths must be finite and positive");
    }
    sizes_[a] = n;
    half_lengths_[a] = half_lengths[a];
  }
  total_ = 1;
  for (int a = dim - 1; a >= 0; --a) {
    strides_[a] = total_;
    total_ *= static_cast<std::size_t>(sizes_[a]);
  }
}

Grid Grid::cube(int dim, int size, double half_length) {
  return Grid(dim, std::vector<int>(dim > 0 ? dim : 0, size),
              std::vector<double>(dim > 0 ? dim : 0, half_length));
}

double Grid::cell_volume() const noexcept {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= dx(a);
  return v;
}

double Grid::freq_cell_volume() const noexcept {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= dxi(a);
  return v;
}

std::array<int, Grid::kMaxDim> Grid::unravel(std::size_t offset) const noexcept {
  std::array<int, kMaxDim> idx{0, 0, 0};
  for (int a = 0; a < dim_; ++a) {
    idx[a] = static_cast<int>(offset / strides_[a]);
    offset %= strides_[a];
  }
  return idx;
}

std::size_t Grid::ravel(const std::array<int, kMaxDim>& idx) const noexcept {
  std::size_t off = 0;
  for (int a = 0; a < dim_; ++a) off += static_cast<std::size_t>(idx[a]) * strides_[a];
  return off;
}

std::array<double, Grid::kMaxDim> Grid::point(std::size_t offset) const noexcept {
  const auto idx = unravel(offset);
  std::array<double, kMaxDim> p{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) p[a] = x(a, idx[a]);
  return p;
}

std::array<double, Grid::kMaxDim> Grid::frequency(std::size_t offset) const noexcept {
  const auto idx = unravel(offset);
  std::array<double, kMaxDim> k{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) k[a] = xi(a, idx[a]);
  return k;
}

bool Grid::on_nyquist(std::size_t offset) const noexcept {
  const auto idx = unravel(offset);
  for (int a = 0; a < dim_; ++a) {
    if (is_nyquist(a, idx[a])) return true;
  }
  return false;
}

bool Grid::operator==(const Grid& other) const noexcept {
  if (dim_ != other.dim_) return false;
  for (int a = 0; a < dim_; ++a) {
    if (sizes_[a] != other.sizes_[a] || half_lengths_[a] != other.half_lengths_[a]) return false;
  }
  return true;
}

std::string Grid::describe() const {
  std::ostringstream os;
  os << dim_ << "D ";
  for (int a = 0; a < dim_; ++a) os << (a ? "x" : "") << sizes_[a];
  os << " L=";
  for (int a = 0; a < dim_; ++a) os << (a ? "," : "") << half_lengths_[a];
  return os.str();
}

}  // namespace gnls
