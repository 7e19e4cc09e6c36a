#pragma once

// Reference computations used only by the tests. Each one avoids the code
// path it checks: direct sums instead of FFTs, sorting instead of plans,
// pair enumeration instead of dilation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "gnls/field.hpp"

namespace oracle {

using gnls::cplx;
using gnls::Grid;

/// Direct Riemann-sum Fourier transform at every lattice frequency.
inline std::vector<cplx> direct_spectrum(const Grid& g, std::span<const cplx> u) {
  std::vector<cplx> out(g.total());
  double w = 1.0;
  for (int a = 0; a < g.dim(); ++a) w *= g.dx(a) / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto xi = g.frequency(k);
    cplx s{};
    for (std::size_t j = 0; j < u.size(); ++j) {
      const auto x = g.point(j);
      double ph = 0.0;
      for (int a = 0; a < g.dim(); ++a) ph -= xi[a] * x[a];
      s += u[j] * std::polar(1.0, ph);
    }
    out[k] = w * s;
  }
  return out;
}

/// Closed forms for Q(x) = sqrt(2) sech(x):
/// |Q|_2^2 = 4, |Q'|_2^2 = 4/3, |Q|_4^4 = 16/3.
inline constexpr double kSechMass = 4.0;
inline constexpr double kSechKinetic = 4.0 / 3.0;
inline constexpr double kSechQuartic = 16.0 / 3.0;

inline double sech(double x) { return 1.0 / std::cosh(x); }

/// Minimum of f on [a, b] by dense scan plus ternary refinement.
inline double minimize_1d(const std::function<double(double)>& f, double a, double b, int n = 20001) {
  double best = f(a), bx = a;
  for (int i = 1; i < n; ++i) {
    const double x = a + (b - a) * i / (n - 1);
    const double v = f(x);
    if (v < best) {
      best = v;
      bx = x;
    }
  }
  double lo = bx - (b - a) / (n - 1), hi = bx + (b - a) / (n - 1);
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (f(m1) < f(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min(best, f(0.5 * (lo + hi)));
}

/// Direct m-fold convolution at the origin on a 1D or 2D signed lattice
/// (offsets in FFT order), by recursion over the first m-1 factors.
inline double multi_conv_at_zero(const Grid& g, const std::vector<std::vector<double>>& u) {
  const int n = g.dim();
  auto add = [&](std::array<int, 3> s, std::size_t off) {
    const auto idx = g.unravel(off);
    for (int a = 0; a < n; ++a) s[a] += g.signed_freq_index(a, idx[a]);
    return s;
  };
  auto lookup = [&](const std::vector<double>& f, const std::array<int, 3>& s) {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < n; ++a) {
      if (s[a] < -g.size(a) / 2 || s[a] > g.size(a) / 2 - 1) return 0.0;
      idx[a] = s[a] < 0 ? s[a] + g.size(a) : s[a];
    }
    return f[g.ravel(idx)];
  };
  std::function<double(std::size_t, std::array<int, 3>, double)> rec = [&](std::size_t k, std::array<int, 3> s,
                                                                             double prod) -> double {
    if (k + 1 == u.size()) {
      std::array<int, 3> neg{-s[0], -s[1], -s[2]};
      return prod * lookup(u[k], neg);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < u[k].size(); ++i) {
      if (u[k][i] == 0.0) continue;
      total += rec(k + 1, add(s, i), prod * u[k][i]);
    }
    return total;
  };
  return rec(0, {0, 0, 0}, 1.0);
}

/// Minkowski sum of lattice masks by pair enumeration, clipped to the box.
inline std::vector<std::uint8_t> pair_sum(const Grid& g, const std::vector<std::uint8_t>& a,
                                          const std::vector<std::uint8_t>& b) {
  std::vector<std::uint8_t> out(g.total(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    const auto si = g.unravel(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      const auto sj = g.unravel(j);
      std::array<int, 3> idx{0, 0, 0};
      bool inside = true;
      for (int d = 0; d < g.dim(); ++d) {
        const int t = g.signed_freq_index(d, si[d]) + g.signed_freq_index(d, sj[d]);
        if (t < -g.size(d) / 2 || t > g.size(d) / 2 - 1) inside = false;
        idx[d] = t < 0 ? t + g.size(d) : t;
      }
      if (inside) out[g.ravel(idx)] = 1;
    }
  }
  return out;
}

}  // namespace oracle
