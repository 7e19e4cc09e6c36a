#include "gnls/props.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gnls/field.hpp"
#include "gnls/functionals.hpp"
#include "gnls/rearrange.hpp"
#include "gnls/setops.hpp"
#include "gnls/symbols.hpp"
#include "gnls/verify.hpp"

namespace gnls {
namespace {

bool in_central_box(const Grid& g, std::size_t off, int w) {
  const auto idx = g.unravel(off);
  for (int a = 0; a < g.dim(); ++a) {
    if (std::abs(g.signed_freq_index(a, idx[a])) > w) return false;
  }
  return true;
}

// Complex Gaussian spectrum on |s_a| <= w with some entries dropped.
Field random_band_limited(const Grid& g, int w, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::bernoulli_distribution drop(0.25);
  std::vector<cplx> spec(g.total());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (!in_central_box(g, i, w) || drop(rng)) continue;
    spec[i] = {gauss(rng), gauss(rng)};
  }
  if (spec[0] == cplx{}) spec[0] = 1.0;
  return Field::from_spectrum(g, std::move(spec));
}

std::vector<double> random_nonneg(const Grid& g, int w, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::bernoulli_distribution drop(0.3);
  std::vector<double> v(g.total());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (in_central_box(g, i, w) && !drop(rng)) v[i] = unif(rng);
  }
  return v;
}

std::size_t negated(const Grid& g, std::size_t off) {
  auto idx = g.unravel(off);
  for (int a = 0; a < g.dim(); ++a) idx[a] = (g.size(a) - idx[a]) % g.size(a);
  return g.ravel(idx);
}

double multi_convolution_at_zero(const Grid& g, const std::vector<std::vector<double>>& factors) {
  std::vector<double> acc = factors.front();
  for (std::size_t k = 1; k + 1 < factors.size(); ++k) acc = lattice_convolution(g, acc, factors[k]);
  const auto& last = factors.back();
  double sum = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) sum += acc[i] * last[negated(g, i)];
  return sum;
}

PropertyResult named(std::string name) {
  PropertyResult r;
  r.name = std::move(name);
  return r;
}

std::string case_tag(std::uint64_t seed, int c) {
  return "seed=" + std::to_string(seed) + " case=" + std::to_string(c);
}

void record(PropertyResult& r, bool ok, double defect, const std::string& tag) {
  ++r.cases;
  r.worst = std::max(r.worst, defect);
  if (!ok) {
    if (r.violations == 0) r.counterexample = tag;
    ++r.violations;
  }
}

struct NamedSymbol {
  Symbol sym;
  std::string label;
};

std::vector<NamedSymbol> monotone_symbols() {
  return {{Symbol::fractional(1.0), "fractional s=1"},
          {Symbol::fractional(0.75), "fractional s=0.75"},
          {Symbol::half_wave(), "half_wave"},
          {Symbol::sqrt_klein_gordon(1.0), "sqrt_klein_gordon m=1"},
          {Symbol::biharmonic(0.0), "biharmonic mu=0"},
          {Symbol::biharmonic(-1.0), "biharmonic mu=-1"},
          {Symbol::anisotropic_hws(1.5), "anisotropic_hws gamma=1.5"}};
}

// Greedily drops intervals while `bad` still holds.
IntervalUnion shrink(IntervalUnion x, const std::function<bool(const IntervalUnion&)>& bad) {
  bool changed = true;
  while (changed && x.intervals().size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < x.intervals().size(); ++i) {
      auto pieces = x.intervals();
      pieces.erase(pieces.begin() + static_cast<long>(i));
      IntervalUnion y(pieces);
      if (bad(y)) {
        x = y;
        changed = true;
        break;
      }
    }
  }
  return x;
}

}  // namespace

std::vector<PropertyResult> run_rearrange_suite(std::uint64_t seed, int cases) {
  const Grid g = Grid::cube(2, 32, 4.0 * std::numbers::pi);
  constexpr int kBand = 3;
  const int axis = 0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> speed(0.0, 0.5);

  PropertyResult norm = named("L2 norm preserved by sharp_e, sharp and bullet");
  PropertyResult quad = named("quadratic form decreases under sharp_e");
  PropertyResult equality = named("quadratic-form equality implies |u^| = |u^|^{*e}");
  PropertyResult lp4 = named("L^4 norm increases under sharp_e");
  PropertyResult lp6 = named("L^6 norm increases under sharp_e");
  PropertyResult lpinf = named("L^inf norm increases under sharp_e");
  PropertyResult peak = named("sharp_e field peaks at the origin");
  const auto symbols = monotone_symbols();
  int equality_cases = 0;

  for (int c = 0; c < cases; ++c) {
    Field f = random_band_limited(g, kBand, rng);
    // Every fourth case starts from a rearranged field moved by a lattice
    // translation and a phase: the quadratic form is then unchanged.
    if (c % 4 == 3) {
      const Field base = fourier_rearrange(f, FourierMode::SharpAxis, axis);
      std::uniform_int_distribution<int> step(-4, 4);
      const std::vector<double> shift{step(rng) * g.dx(0), step(rng) * g.dx(1)};
      f = translated(base, shift).scaled(std::polar(1.0, 0.7 * c));
    }
    const std::string tag = case_tag(seed, c);
    const Field fe = fourier_rearrange(f, FourierMode::SharpAxis, axis);
    const double n0 = norm_L2(f);

    double worst = 0.0;
    for (const Field& h : {fe, fourier_rearrange(f, FourierMode::Sharp), fourier_rearrange(f, FourierMode::Bullet)}) {
      worst = std::max(worst, std::abs(norm_L2(h) - n0) / n0);
    }
    record(norm, worst <= 1e-12, worst, tag);

    const auto& ns = symbols[static_cast<std::size_t>(c) % symbols.size()];
    const BoostedSymbol bsym{ns.sym, {speed(rng), 0.0}};
    const double omega = 1.0 - sigma_v(bsym);
    const double qf = quad_form(f, bsym, omega).value;
    const double qe = quad_form(fe, bsym, omega).value;
    const double scale = std::max(1.0, std::abs(qf));
    const double excess = (qe - qf) / scale;
    record(quad, excess <= 1e-10, excess, tag + " symbol=" + ns.label);
    if (std::abs(qe - qf) <= 1e-10 * scale) {
      ++equality_cases;
      const auto mod = f.spectral_modulus();
      const auto re = rearranged_spectral_modulus(f, axis);
      double gap = 0.0, top = 0.0;
      for (std::size_t i = 0; i < mod.size(); ++i) {
        gap = std::max(gap, std::abs(mod[i] - re[i]));
        top = std::max(top, mod[i]);
      }
      record(equality, gap <= 1e-8 * top, gap / top, tag + " symbol=" + ns.label);
    }

    for (auto [p, res] : {std::pair{4.0, &lp4}, std::pair{6.0, &lp6}, std::pair{kInfinity, &lpinf}}) {
      const double a = norm_Lp(f, p), b = norm_Lp(fe, p);
      const double rel = (a - b) / b;
      record(*res, rel <= 1e-10, rel, tag);
    }

    const auto phys = fe.physical();
    const std::size_t origin = g.ravel({g.size(0) / 2, g.size(1) / 2, 0});
    double top = 0.0;
    for (cplx z : phys) top = std::max(top, std::abs(z));
    const double lack = (top - phys[origin].real()) / top;
    record(peak, lack <= 1e-12, lack, tag);
  }
  equality.note = std::to_string(equality_cases) + " equality cases detected";
  if (equality.cases == 0) equality.note += "; the equality branch was never exercised";
  return {norm, quad, equality, lp4, lp6, lpinf, peak};
}

std::vector<PropertyResult> run_convolution_suite(std::uint64_t seed, int cases) {
  const Grid g = Grid::cube(2, 32, 4.0 * std::numbers::pi);
  const int axis = 0;
  const RearrangementPlan plan(g, axis, Space::Frequency);
  std::mt19937_64 rng(seed);
  std::vector<PropertyResult> out;
  for (int m : {3, 5}) {
    // m w < N / 2 keeps every partial sum inside the box.
    const int w = m == 3 ? 4 : 2;
    PropertyResult r = named("multi-convolution at zero increases under *_e, m=" + std::to_string(m));
    for (int c = 0; c < cases; ++c) {
      std::vector<std::vector<double>> u, ur;
      for (int k = 0; k < m; ++k) {
        u.push_back(random_nonneg(g, w, rng));
        ur.push_back(plan.apply(u.back()));
      }
      const double a = multi_convolution_at_zero(g, u);
      const double b = multi_convolution_at_zero(g, ur);
      const double rel = b > 0.0 ? (a - b) / b : (a > 0.0 ? 1.0 : 0.0);
      record(r, rel <= 1e-10, rel, case_tag(seed, c));
    }
    out.push_back(r);
  }
  return out;
}

std::vector<PropertyResult> run_setops_suite(std::uint64_t seed, int trials, int masks) {
  std::mt19937_64 rng(seed);
  std::vector<PropertyResult> out;

  {
    // Compare the support of an FFT convolution with a direct pairwise sum of masks.
    const Grid g = Grid::cube(2, 32, 4.0 * std::numbers::pi);
    PropertyResult r = named("support of f*g equals {f>0} + {g>0}");
    std::uniform_int_distribution<int> width(1, 7);
    for (int c = 0; c < masks; ++c) {
      const auto f = random_nonneg(g, width(rng), rng);
      const auto h = random_nonneg(g, width(rng), rng);
      const auto conv = lattice_convolution(g, f, h);
      const double top = *std::max_element(conv.begin(), conv.end());
      std::vector<std::uint8_t> direct(g.total(), 0);
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] <= 0.0) continue;
        const auto si = g.unravel(i);
        for (std::size_t j = 0; j < h.size(); ++j) {
          if (h[j] <= 0.0) continue;
          const auto sj = g.unravel(j);
          std::array<int, 3> sum{0, 0, 0};
          for (int a = 0; a < 2; ++a) {
            const int t = g.signed_freq_index(a, si[a]) + g.signed_freq_index(a, sj[a]);
            sum[a] = t < 0 ? t + g.size(a) : t;
          }
          direct[g.ravel(sum)] = 1;
        }
      }
      int mismatches = 0;
      for (std::size_t i = 0; i < conv.size(); ++i) {
        const bool pos = conv[i] > 1e-12 * top;
        if (pos != (direct[i] != 0)) ++mismatches;
      }
      record(r, mismatches == 0, mismatches, case_tag(seed, c));
    }
    out.push_back(r);
  }

  {
    PropertyResult r = named("no bounded union is a 3-fold Minkowski fixed point");
    const auto summary = classify_fixed_points([](std::mt19937_64& g) { return random_bounded_union(g, 5); }, 3,
                                               trials, seed + 1);
    r.cases = summary.trials;
    r.violations = summary.fixed_points;
    r.worst = summary.fixed_points;
    if (!summary.violations.empty()) {
      r.counterexample = to_string(shrink(summary.violations.front(), [](const IntervalUnion& x) {
        return !x.is_empty() && is_fixed_point(x, 3);
      }));
    }
    out.push_back(r);
  }

  {
    PropertyResult r = named("only R, (0,inf), (-inf,0) are fixed points (mixed sampler)");
    const auto summary = classify_fixed_points(random_mixed_union, 3, std::max(trials / 5, 1), seed + 2);
    r.cases = summary.trials;
    r.violations = static_cast<int>(summary.violations.size());
    r.note = std::to_string(summary.canonical) + " canonical fixed points sampled";
    if (!summary.violations.empty()) r.counterexample = to_string(summary.violations.front());
    if (summary.canonical == 0) {
      r.violations += 1;
      r.counterexample = "sampler never produced a canonical set";
    }
    out.push_back(r);
  }

  {
    PropertyResult r = named("canonical sets are fixed for m = 2, 3, 5");
    for (const auto& x : {IntervalUnion::real_line(), IntervalUnion::positive(), IntervalUnion::negative()}) {
      for (int m : {2, 3, 5}) record(r, is_fixed_point(x, m), 0.0, to_string(x) + " m=" + std::to_string(m));
    }
    out.push_back(r);
  }

  {
    PropertyResult r = named("one-sided sets with positive infimum double it");
    std::uniform_int_distribution<int> cut(1, 32);
    for (int c = 0; c < std::max(trials / 10, 1); ++c) {
      IntervalUnion x = random_bounded_union(rng);
      const double lift = cut(rng) / 4.0 - x.inf();
      std::vector<Interval> pieces;
      for (const auto& p : x.intervals()) pieces.push_back({p.lo + lift, p.hi + lift});
      if (c % 2) pieces.push_back({pieces.back().hi + 1.0, kInfinity});
      x = IntervalUnion(pieces);
      const IntervalUnion s = minkowski_sum(x, x);
      const bool ok = !is_fixed_point(x, 2) && s.inf() == 2.0 * x.inf();
      record(r, ok, 0.0, to_string(x));
    }
    out.push_back(r);
  }

  {
    PropertyResult r = named("B(x1,r1) + B(x2,r2) = B(x1+x2, r1+r2)");
    std::uniform_int_distribution<int> num(-64, 64), rad(1, 64);
    for (int c = 0; c < 1000; ++c) {
      const double x1 = num(rng) / 8.0, x2 = num(rng) / 8.0, r1 = rad(rng) / 8.0, r2 = rad(rng) / 8.0;
      const bool ok = minkowski_sum(IntervalUnion::ball(x1, r1), IntervalUnion::ball(x2, r2)) ==
                      IntervalUnion::ball(x1 + x2, r1 + r2);
      std::ostringstream os;
      os << "x1=" << x1 << " r1=" << r1 << " x2=" << x2 << " r2=" << r2;
      record(r, ok, 0.0, os.str());
    }
    out.push_back(r);
  }

  {
    PropertyResult r = named("Minkowski sum is commutative, associative and monotone");
    for (int c = 0; c < 1000; ++c) {
      const auto a = random_mixed_union(rng), b = random_mixed_union(rng), d = random_bounded_union(rng);
      const auto ab = minkowski_sum(a, b);
      bool ok = ab == minkowski_sum(b, a);
      ok = ok && minkowski_sum(ab, d) == minkowski_sum(a, minkowski_sum(b, d));
      const auto a_big = unite(a, d);
      ok = ok && ab.subset_of(minkowski_sum(a_big, b));
      for (const auto& p : ab.intervals()) ok = ok && p.lo < p.hi;
      record(r, ok, 0.0, to_string(a) + " ; " + to_string(b) + " ; " + to_string(d));
    }
    out.push_back(r);
  }

  {
    // Rasterized sums agree with the exact sum up to one cell per boundary.
    // Endpoints sit half a cell off the lattice so no piece rasterizes to nothing.
    PropertyResult r = named("rasterized dilation matches the exact sum");
    const int N = 256;
    const Grid g = Grid::cube(1, N, N / 2.0 * std::numbers::pi / 8.0);
    const double h = g.dxi(0);
    for (int c = 0; c < 200; ++c) {
      std::uniform_int_distribution<int> start(-40, 30), len(1, 10);
      auto rand_set = [&] {
        std::vector<Interval> p;
        const int k = 1 + c % 3;
        for (int i = 0; i < k; ++i) {
          const int lo = start(rng);
          p.push_back({(lo + 0.5) * h, (lo + len(rng) + 0.5) * h});
        }
        return IntervalUnion(p);
      };
      const auto x = rand_set(), y = rand_set();
      auto raster = [&](const IntervalUnion& s) {
        std::vector<std::uint8_t> m(N);
        for (int k = 0; k < N; ++k) m[k] = s.contains(g.xi(0, k)) ? 1 : 0;
        return m;
      };
      const auto dil = dilate(g, raster(x), raster(y));
      const auto exact = minkowski_sum(x, y);
      int bad = 0;
      for (int k = 0; k < N; ++k) {
        const double xi = g.xi(0, k);
        const bool near_edge = std::any_of(exact.intervals().begin(), exact.intervals().end(), [&](const Interval& p) {
          return std::abs(xi - p.lo) <= 1.0001 * h || std::abs(xi - p.hi) <= 1.0001 * h;
        });
        if (!near_edge && (dil[k] != 0) != exact.contains(xi)) ++bad;
      }
      record(r, bad == 0, bad, to_string(x) + " + " + to_string(y));
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace gnls
