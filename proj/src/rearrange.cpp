#include "gnls/rearrange.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "gnls/error.hpp"

namespace gnls {
namespace {

int tie_rank(int s) { return s > 0 ? 2 * s - 1 : -2 * s; }

void check_values(std::span<const double> values) {
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("rearrangement needs finite nonnegative values");
    }
  }
}

}  // namespace

RearrangementPlan::RearrangementPlan(const Grid& grid, int axis, Space space)
    : grid_(grid), axis_(axis), space_(space) {
  const int n = grid.dim();
  if (axis >= n) throw InvalidArgument("rearrangement axis out of range");
  const std::size_t total = grid.total();

  std::vector<std::array<int, Grid::kMaxDim>> signed_idx(total);
  dist2_.assign(total, 0.0);
  for (std::size_t i = 0; i < total; ++i) {
    const auto idx = grid.unravel(i);
    for (int a = 0; a < n; ++a) {
      const int s = space == Space::Frequency ? grid.signed_freq_index(a, idx[a]) : idx[a] - grid.size(a) / 2;
      signed_idx[i][a] = s;
      if (a == axis) continue;
      const double h = space == Space::Frequency ? grid.dxi(a) : grid.dx(a);
      dist2_[i] += (s * h) * (s * h);
    }
  }

  order_.resize(total);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::vector<int> slice_of(total, 0);
  if (axis >= 0) {
    for (std::size_t i = 0; i < total; ++i) slice_of[i] = grid.unravel(i)[axis];
  }
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t l, std::size_t r) {
    const int sl = slice_of[l], sr = slice_of[r];
    if (sl != sr) return sl < sr;
    if (dist2_[l] != dist2_[r]) return dist2_[l] < dist2_[r];
    for (int a = 0; a < n; ++a) {
      if (a == axis) continue;
      const int tl = tie_rank(signed_idx[l][a]), tr = tie_rank(signed_idx[r][a]);
      if (tl != tr) return tl < tr;
    }
    return false;
  });

  const std::size_t slices = axis < 0 ? 1 : static_cast<std::size_t>(grid.size(axis));
  const std::size_t per = total / slices;
  starts_.resize(slices + 1);
  for (std::size_t k = 0; k <= slices; ++k) starts_[k] = k * per;
}

std::span<const std::size_t> RearrangementPlan::slice(std::size_t k) const {
  return std::span<const std::size_t>(order_).subspan(starts_[k], starts_[k + 1] - starts_[k]);
}

std::vector<double> RearrangementPlan::apply(std::span<const double> values) const {
  if (values.size() != grid_.total()) throw InvalidArgument("rearrangement: size does not match grid");
  check_values(values);
  std::vector<double> out(values.size());
  std::vector<double> buf;
  for (std::size_t k = 0; k < slice_count(); ++k) {
    const auto idx = slice(k);
    buf.resize(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) buf[i] = values[idx[i]];
    std::stable_sort(buf.begin(), buf.end(), std::greater<>());
    for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = buf[i];
  }
  return out;
}

std::vector<double> schwarz(std::span<const double> values, std::span<const std::size_t> order) {
  if (order.size() != values.size()) throw InvalidArgument("schwarz: order is not a permutation");
  check_values(values);
  std::vector<char> seen(values.size(), 0);
  for (std::size_t o : order) {
    if (o >= values.size() || seen[o]) throw InvalidArgument("schwarz: order is not a permutation");
    seen[o] = 1;
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = sorted[i];
  return out;
}

namespace {

Field real_field(const Grid& g, const std::vector<double>& v, bool spectral) {
  std::vector<cplx> c(v.begin(), v.end());
  return spectral ? Field::from_spectrum(g, std::move(c)) : Field::from_physical(g, std::move(c));
}

}  // namespace

Field schwarz(const Field& f) {
  const RearrangementPlan plan(f.grid(), -1, Space::Physical);
  return real_field(f.grid(), plan.apply(f.modulus()), false);
}

Field steiner_codim(const Field& f, int axis) {
  if (f.grid().dim() < 2) throw InvalidArgument("Steiner symmetrization needs n >= 2");
  const RearrangementPlan plan(f.grid(), axis, Space::Physical);
  return real_field(f.grid(), plan.apply(f.modulus()), false);
}

std::vector<double> rearranged_spectral_modulus(const Field& f, int axis) {
  auto mod = f.spectral_modulus();
  if (f.grid().dim() == 1) return mod;
  const RearrangementPlan plan(f.grid(), axis, Space::Frequency);
  return plan.apply(mod);
}

Field fourier_rearrange(const Field& f, FourierMode mode, int axis) {
  const Grid& g = f.grid();
  switch (mode) {
    case FourierMode::Sharp: {
      const RearrangementPlan plan(g, -1, Space::Frequency);
      return real_field(g, plan.apply(f.spectral_modulus()), true);
    }
    case FourierMode::SharpAxis: {
      if (g.dim() < 2) throw InvalidArgument("Fourier Steiner rearrangement needs n >= 2");
      const RearrangementPlan plan(g, axis, Space::Frequency);
      return real_field(g, plan.apply(f.spectral_modulus()), true);
    }
    case FourierMode::Bullet:
      return real_field(g, f.spectral_modulus(), true);
  }
  throw InvalidArgument("unknown Fourier rearrangement mode");
}

cplx interpolate(const Field& f, const std::array<double, 3>& x) {
  const Grid& g = f.grid();
  const auto spec = f.spectrum();
  double scale = 1.0;
  for (int a = 0; a < g.dim(); ++a) scale *= g.dxi(a) / std::sqrt(2.0 * std::numbers::pi);
  cplx sum{};
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto xi = g.frequency(i);
    double phase = 0.0;
    for (int a = 0; a < g.dim(); ++a) phase += xi[a] * x[a];
    sum += spec[i] * std::polar(1.0, phase);
  }
  return sum * scale;
}

BochnerResult bochner_check(const Field& f, const std::vector<std::array<double, 3>>& points) {
  if (points.size() > 64) throw InvalidArgument("bochner_check: at most 64 sample points");
  const int m = static_cast<int>(points.size());
  BochnerResult res;
  if (m == 0) {
    res.pass = true;
    return res;
  }
  Eigen::MatrixXcd mat(m, m);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      std::array<double, 3> d{};
      for (int a = 0; a < 3; ++a) d[a] = points[k][a] - points[l][a];
      mat(k, l) = interpolate(f, d);
    }
  }
  const Eigen::MatrixXcd herm = 0.5 * (mat + mat.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  res.min_eigenvalue = solver.eigenvalues().minCoeff();
  res.pass = res.min_eigenvalue >= -1e-8 * norm_Lp(f, kInfinity);
  return res;
}

}  // namespace gnls
