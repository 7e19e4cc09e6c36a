#include "gnls/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "gnls/error.hpp"
#include "gnls/rearrange.hpp"
#include "gnls/solver.hpp"

namespace gnls {
namespace {

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

// Zero-padded copy of the signed lattice, large enough that sums of `folds`
// box points do not wrap.
struct Padded {
  int dim = 1;
  std::array<int, 3> box{1, 1, 1};
  std::array<int, 3> shape{1, 1, 1};
  std::size_t total = 1;

  Padded(const Grid& g, int folds) : dim(g.dim()) {
    for (int a = 0; a < dim; ++a) {
      box[a] = g.size(a);
      shape[a] = static_cast<int>(next_pow2(static_cast<std::size_t>(folds) * g.size(a)));
      total *= static_cast<std::size_t>(shape[a]);
    }
  }

  std::size_t offset(const std::array<int, 3>& s) const {
    std::size_t off = 0;
    for (int a = 0; a < dim; ++a) {
      const int w = ((s[a] % shape[a]) + shape[a]) % shape[a];
      off = off * shape[a] + static_cast<std::size_t>(w);
    }
    return off;
  }

  std::vector<cplx> embed(const Grid& g, std::span<const double> v) const {
    std::vector<cplx> out(total);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0.0) out[offset(signed_index(g, i))] = v[i];
    }
    return out;
  }

  std::vector<double> cyclic_convolution(std::span<const cplx> a, std::span<const cplx> b) const {
    auto fa = raw_dft(dim, shape, a, Direction::Forward);
    const auto fb = raw_dft(dim, shape, b, Direction::Forward);
    for (std::size_t i = 0; i < total; ++i) fa[i] *= fb[i];
    const auto c = raw_dft(dim, shape, fa, Direction::Inverse);
    std::vector<double> out(total);
    const double inv = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < total; ++i) out[i] = c[i].real() * inv;
    return out;
  }

  static std::array<int, 3> signed_index(const Grid& g, std::size_t i) {
    auto idx = g.unravel(i);
    for (int a = 0; a < g.dim(); ++a) idx[a] = g.signed_freq_index(a, idx[a]);
    return idx;
  }
};

std::vector<double> to_double(const std::vector<std::uint8_t>& m) { return {m.begin(), m.end()}; }

// Neighbors of a lattice point on the signed lattice, without wrap-around.
template <class Fn>
void for_each_neighbor(const Grid& g, std::size_t off, Fn&& fn) {
  const auto idx = g.unravel(off);
  for (int a = 0; a < g.dim(); ++a) {
    const int s = g.signed_freq_index(a, idx[a]);
    for (int d : {-1, 1}) {
      const int t = s + d;
      if (t < -g.size(a) / 2 || t > g.size(a) / 2 - 1) continue;
      auto nb = idx;
      nb[a] = t < 0 ? t + g.size(a) : t;
      fn(g.ravel(nb));
    }
  }
}

}  // namespace

std::size_t SupportSet::count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

SupportSet support_set(const Field& Q, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("support threshold must lie in (0, 1)");
  const auto mod = Q.spectral_modulus();
  const double peak = mod.empty() ? 0.0 : *std::max_element(mod.begin(), mod.end());
  if (!(peak > 0.0)) throw ZeroField();
  SupportSet S{Q.grid(), std::vector<std::uint8_t>(mod.size()), tau};
  for (std::size_t i = 0; i < mod.size(); ++i) S.mask[i] = mod[i] > tau * peak ? 1 : 0;
  return S;
}

int label_components(const SupportSet& S, std::vector<int>& labels) {
  labels.assign(S.mask.size(), -1);
  int count = 0;
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < S.mask.size(); ++i) {
    if (!S.mask[i] || labels[i] >= 0) continue;
    labels[i] = count;
    queue.push_back(i);
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      for_each_neighbor(S.grid, cur, [&](std::size_t nb) {
        if (S.mask[nb] && labels[nb] < 0) {
          labels[nb] = count;
          queue.push_back(nb);
        }
      });
    }
    ++count;
  }
  return count;
}

bool is_connected(const SupportSet& S) {
  std::vector<int> labels;
  return label_components(S, labels) <= 1;
}

std::vector<double> lattice_convolution(const Grid& grid, std::span<const double> a,
                                        std::span<const double> b) {
  if (a.size() != grid.total() || b.size() != grid.total()) {
    throw InvalidArgument("lattice_convolution: size does not match grid");
  }
  const Padded pad(grid, 2);
  const auto c = pad.cyclic_convolution(pad.embed(grid, a), pad.embed(grid, b));
  std::vector<double> out(grid.total());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c[pad.offset(Padded::signed_index(grid, i))];
  return out;
}

std::vector<std::uint8_t> dilate(const Grid& grid, const std::vector<std::uint8_t>& a,
                                 const std::vector<std::uint8_t>& b) {
  const auto c = lattice_convolution(grid, to_double(a), to_double(b));
  std::vector<std::uint8_t> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] > 0.5 ? 1 : 0;
  return out;
}

double minkowski_defect(const SupportSet& S, int m) {
  if (m < 2) throw InvalidArgument("minkowski_defect needs m >= 2");
  const Grid& g = S.grid;
  const Padded pad(g, m);
  const auto base = pad.embed(g, to_double(S.mask));
  std::vector<cplx> cur = base;
  for (int k = 2; k <= m; ++k) {
    const auto c = pad.cyclic_convolution(cur, base);
    for (std::size_t i = 0; i < c.size(); ++i) cur[i] = c[i] > 0.5 ? 1.0 : 0.0;
  }
  std::size_t inside = 0, diff = 0;
  for (std::size_t i = 0; i < S.mask.size(); ++i) {
    const auto s = Padded::signed_index(g, i);
    bool keep = true;
    for (int a = 0; a < g.dim(); ++a) {
      const long ms = static_cast<long>(m) * s[a];
      if (ms < -g.size(a) / 2 || ms > g.size(a) / 2 - 1) keep = false;
    }
    if (!keep) continue;
    const bool in_s = S.mask[i] != 0;
    const bool in_sum = cur[pad.offset(s)].real() > 0.5;
    inside += in_s ? 1 : 0;
    diff += in_s != in_sum ? 1 : 0;
  }
  return static_cast<double>(diff) / static_cast<double>(std::max<std::size_t>(inside, 1));
}

PhaseFit phase_affinity(const Field& Q, const SupportSet& S) {
  const Grid& g = Q.grid();
  std::vector<int> labels;
  const int comps = label_components(S, labels);
  if (comps > 1) {
    throw DisconnectedSupport("support has " + std::to_string(comps) + " components");
  }
  if (comps == 0) throw ZeroField();
  const auto spec = Q.spectrum();
  std::size_t start = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (S.mask[i] && std::abs(spec[i]) > best) {
      best = std::abs(spec[i]);
      start = i;
    }
  }

  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> phase(spec.size(), 0.0);
  std::vector<char> seen(spec.size(), 0);
  std::vector<std::size_t> visited;
  std::deque<std::size_t> queue{start};
  phase[start] = std::arg(spec[start]);
  seen[start] = 1;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    visited.push_back(cur);
    for_each_neighbor(g, cur, [&](std::size_t nb) {
      if (!S.mask[nb] || seen[nb]) return;
      const double raw = std::arg(spec[nb]);
      phase[nb] = raw + two_pi * std::round((phase[cur] - raw) / two_pi);
      seen[nb] = 1;
      queue.push_back(nb);
    });
  }

  const int n = g.dim();
  Eigen::MatrixXd A(visited.size(), n + 1);
  Eigen::VectorXd b(visited.size());
  double wsum = 0.0;
  for (std::size_t r = 0; r < visited.size(); ++r) {
    const std::size_t i = visited[r];
    const double w = std::norm(spec[i]);
    const double sw = std::sqrt(w);
    const auto xi = g.frequency(i);
    A(r, 0) = sw;
    for (int a = 0; a < n; ++a) A(r, a + 1) = sw * xi[a];
    b(r) = sw * phase[i];
    wsum += w;
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
  PhaseFit fit;
  fit.alpha = std::remainder(coef(0), two_pi);
  fit.beta.resize(n);
  for (int a = 0; a < n; ++a) fit.beta[a] = coef(a + 1);
  fit.residual = std::sqrt((A * coef - b).squaredNorm() / wsum);
  return fit;
}

double cylindrical_defect(const Field& Q, int axis) {
  const Grid& g = Q.grid();
  const int n = g.dim();
  const auto v = Q.physical();
  double peak = 0.0;
  for (cplx z : v) peak = std::max(peak, std::abs(z));
  if (!(peak > 0.0)) throw ZeroField();

  auto defect_of = [&](auto&& map_index) {
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto idx = g.unravel(i);
      map_index(idx);
      worst = std::max(worst, std::abs(v[i] - v[g.ravel(idx)]));
    }
    return worst / peak;
  };

  double worst = 0.0;
  std::vector<int> transverse;
  for (int a = 0; a < n; ++a) {
    if (a != axis) transverse.push_back(a);
  }
  for (int t : transverse) {
    worst = std::max(worst, defect_of([&](std::array<int, 3>& idx) { idx[t] = (g.size(t) - idx[t]) % g.size(t); }));
  }
  if (transverse.size() == 2) {
    const int t0 = transverse[0], t1 = transverse[1];
    if (g.size(t0) == g.size(t1) && g.half_length(t0) == g.half_length(t1)) {
      worst = std::max(worst, defect_of([&](std::array<int, 3>& idx) { std::swap(idx[t0], idx[t1]); }));
    }
  }
  return worst;
}

double conjugation_defect(const Field& Q) {
  const double norm = norm_L2(Q);
  if (!(norm > 0.0)) throw ZeroField();
  const Field r = conj_reflected(Q);
  double sum = 0.0;
  const auto a = Q.physical(), b = r.physical();
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - b[i]);
  return std::sqrt(sum * Q.grid().cell_volume()) / norm;
}

double modulus_rearranged_defect(const Field& Q, int axis) {
  if (Q.grid().dim() == 1) return 0.0;
  const auto mod = Q.spectral_modulus();
  const auto re = rearranged_spectral_modulus(Q, axis);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < mod.size(); ++i) {
    num += (mod[i] - re[i]) * (mod[i] - re[i]);
    den += mod[i] * mod[i];
  }
  if (!(den > 0.0)) throw ZeroField();
  return std::sqrt(num / den);
}

std::string to_string(SupportShape shape) {
  switch (shape) {
    case SupportShape::Full: return "full";
    case SupportShape::Centered: return "centered";
    case SupportShape::PositiveHalf: return "positive_half";
    case SupportShape::NegativeHalf: return "negative_half";
    case SupportShape::Other: return "other";
  }
  return "other";
}

SupportShape classify_support_1d(const SupportSet& S) {
  const Grid& g = S.grid;
  if (g.dim() != 1) throw InvalidArgument("classify_support_1d needs a 1D grid");
  const int N = g.size(0);
  // Walk the signed lattice from -N/2 + 1 to N/2 - 1 (Nyquist excluded).
  int lo = N, hi = -N, runs = 0;
  bool prev = false;
  for (int s = -N / 2 + 1; s <= N / 2 - 1; ++s) {
    const bool in = S.mask[s < 0 ? s + N : s] != 0;
    if (in) {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      if (!prev) ++runs;
    }
    prev = in;
  }
  if (runs != 1) return SupportShape::Other;
  if (lo == -N / 2 + 1 && hi == N / 2 - 1) return SupportShape::Full;
  if (lo < 0 && hi > 0) return SupportShape::Centered;
  if (lo >= 0 && lo <= 1) return SupportShape::PositiveHalf;
  if (hi <= 0 && hi >= -1) return SupportShape::NegativeHalf;
  return SupportShape::Other;
}

SymmetryReport symmetry_report(const Field& Qin, int axis, int sigma, const SymmetryThresholds& th) {
  const Field Q = canonicalize(Qin);
  const Grid& g = Q.grid();
  SymmetryReport rep;
  std::vector<std::string> fails;
  const SupportSet S = support_set(Q, th.tau);

  rep.s1_defect = g.dim() > 1 ? cylindrical_defect(Q, axis) : 0.0;
  rep.modulus_rearranged_defect = modulus_rearranged_defect(Q, axis);
  rep.connected = is_connected(S);
  rep.minkowski_defect = minkowski_defect(S, 2 * sigma + 1);
  if (g.dim() == 1) rep.shape = classify_support_1d(S);

  Field centered = Q;
  if (rep.connected) {
    rep.phase = phase_affinity(Q, S);
    std::vector<cplx> spec(Q.spectrum().begin(), Q.spectrum().end());
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const auto xi = g.frequency(i);
      double ph = rep.phase.alpha;
      for (int a = 0; a < g.dim(); ++a) ph += rep.phase.beta[a] * xi[a];
      spec[i] *= std::polar(1.0, -ph);
    }
    centered = Field::from_spectrum(g, std::move(spec));
  } else {
    rep.phase.alpha = rep.phase.residual = std::nan("");
    rep.phase.beta.assign(g.dim(), std::nan(""));
    fails.push_back("disconnected support");
  }
  rep.s2_defect = conjugation_defect(centered);

  if (!(rep.s1_defect <= th.s1)) fails.push_back("s1");
  if (!(rep.s2_defect <= th.s2)) fails.push_back("s2");
  if (!(rep.modulus_rearranged_defect <= th.modrearr)) fails.push_back("modrearr");
  if (!(rep.minkowski_defect <= th.minkowski)) fails.push_back("minkowski");
  if (rep.connected && !(rep.phase.residual <= th.phase_residual)) fails.push_back("phase");
  rep.pass = fails.empty();
  for (std::size_t i = 0; i < fails.size(); ++i) rep.failures += (i ? "," : "") + fails[i];
  return rep;
}

}  // namespace gnls
