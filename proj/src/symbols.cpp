#include "gnls/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gnls/error.hpp"

namespace gnls {
namespace {

double norm2(std::span<const double> xi) {
  double s = 0.0;
  for (double x : xi) s += x * x;
  return s;
}

std::string format_point(std::span<const double> xi) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < xi.size(); ++i) os << (i ? ", " : "") << xi[i];
  os << ')';
  return os.str();
}

bool leq_with_slack(double lhs, double rhs) {
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return lhs <= rhs + 1e-12 * scale;
}

}  // namespace

std::string to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Fractional: return "fractional";
    case SymbolKind::Biharmonic: return "biharmonic";
    case SymbolKind::SqrtKleinGordon: return "sqrt_klein_gordon";
    case SymbolKind::HalfWave: return "half_wave";
    case SymbolKind::AnisotropicHWS: return "anisotropic_hws";
    case SymbolKind::Custom: return "custom";
  }
  return "unknown";
}

Symbol Symbol::fractional(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("fractional symbol needs s > 0");
  Symbol sym;
  sym.kind_ = SymbolKind::Fractional;
  sym.name_ = "fractional";
  sym.order_ = s;
  sym.param_ = s;
  return sym;
}

Symbol Symbol::biharmonic(double mu) {
  if (!std::isfinite(mu)) throw InvalidArgument("biharmonic symbol needs finite mu");
  Symbol sym;
  sym.kind_ = SymbolKind::Biharmonic;
  sym.name_ = "biharmonic";
  sym.order_ = 2.0;
  sym.param_ = mu;
  if (mu > 0.0) {
    // t^2 - mu t >= t^2 / 2 - mu^2 / 2 with t = |xi|^2.
    sym.A_ = 0.5;
    sym.c_ = -0.5 * mu * mu;
    sym.B_ = 1.0;
  } else if (mu < 0.0) {
    // |mu| t <= t^2 + mu^2 / 4.
    sym.A_ = 1.0;
    sym.B_ = 2.0;
    sym.upper_offset_ = 0.25 * mu * mu;
  }
  return sym;
}

Symbol Symbol::sqrt_klein_gordon(double m) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidArgument("sqrt-Klein-Gordon symbol needs m >= 0");
  Symbol sym;
  sym.kind_ = m == 0.0 ? SymbolKind::HalfWave : SymbolKind::SqrtKleinGordon;
  sym.name_ = m == 0.0 ? "half_wave" : "sqrt_klein_gordon";
  sym.order_ = 0.5;
  sym.param_ = m;
  sym.upper_offset_ = m;
  return sym;
}

Symbol Symbol::half_wave() { return sqrt_klein_gordon(0.0); }

Symbol Symbol::anisotropic_hws(double gamma, int split) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("anisotropic symbol needs gamma > 0");
  if (split < 1) throw InvalidArgument("anisotropic symbol needs split >= 1");
  Symbol sym;
  sym.kind_ = SymbolKind::AnisotropicHWS;
  sym.name_ = "anisotropic_hws";
  sym.order_ = 0.5;
  sym.param_ = gamma;
  sym.split_ = split;
  // |xi_x|^2 >= |xi_x| - 1/4 gives the lower bound; no bound of the form
  // B|xi| + C holds above because of the quadratic xi_x block.
  sym.A_ = std::min(1.0, gamma);
  sym.c_ = -0.25;
  sym.B_ = 1.0;
  sym.upper_offset_ = gamma;
  return sym;
}

Symbol Symbol::custom(std::string name, Callable fn, double order, double A, double B, double c,
                      double upper_offset, int axis) {
  if (!fn) throw InvalidArgument("custom symbol needs a callable");
  Symbol sym;
  sym.kind_ = SymbolKind::Custom;
  sym.name_ = std::move(name);
  sym.custom_ = std::move(fn);
  sym.order_ = order;
  sym.A_ = A;
  sym.B_ = B;
  sym.c_ = c;
  sym.upper_offset_ = upper_offset;
  sym.axis_ = axis;
  sym.param_ = 0.0;
  return sym;
}

Symbol Symbol::with_axis(int axis) const {
  if (axis < 0 || axis >= Grid::kMaxDim) throw InvalidArgument("symmetry axis must be 0, 1 or 2");
  Symbol s = *this;
  s.axis_ = axis;
  return s;
}

Symbol Symbol::with_bounds(double A, double B, double c, double upper_offset) const {
  Symbol s = *this;
  s.A_ = A;
  s.B_ = B;
  s.c_ = c;
  s.upper_offset_ = upper_offset;
  return s;
}

double Symbol::value(std::span<const double> xi) const {
  switch (kind_) {
    case SymbolKind::Fractional: {
      const double k2 = norm2(xi);
      return param_ == 1.0 ? k2 : std::pow(k2, param_);
    }
    case SymbolKind::Biharmonic: {
      const double k2 = norm2(xi);
      return k2 * k2 - param_ * k2;
    }
    case SymbolKind::SqrtKleinGordon:
    case SymbolKind::HalfWave:
      return std::sqrt(norm2(xi) + param_ * param_);
    case SymbolKind::AnisotropicHWS: {
      // Block x is the `split` coordinates starting at the symmetry axis.
      const std::size_t n = xi.size();
      double x2 = 0.0, y2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t rel = (i + n - static_cast<std::size_t>(axis_) % std::max<std::size_t>(n, 1)) % n;
        (rel < static_cast<std::size_t>(split_) ? x2 : y2) += xi[i] * xi[i];
      }
      return x2 + param_ * std::sqrt(y2);
    }
    case SymbolKind::Custom:
      return custom_(xi);
  }
  return 0.0;
}

double BoostedSymbol::value(std::span<const double> xi) const {
  double p = base.value(xi);
  for (std::size_t i = 0; i < xi.size() && i < v.size(); ++i) p -= v[i] * xi[i];
  return p;
}

double BoostedSymbol::speed() const { return std::sqrt(norm2(v)); }

double eval_symbol(const Symbol& sym, std::span<const double> xi) {
  for (double x : xi) {
    if (!std::isfinite(x)) throw InvalidArgument("eval_symbol: non-finite frequency");
  }
  return sym.value(xi);
}

AssumptionReport check_assumptions(const Symbol& sym, int dim, const ValidationGrid& vg) {
  AssumptionReport rep;
  if (dim < 1 || dim > Grid::kMaxDim || vg.points_per_axis < 2) {
    rep.ass1_ok = rep.ass2_ok = false;
    rep.detail = "invalid validation grid";
    return rep;
  }
  const int m = vg.points_per_axis;
  const double h = 2.0 * vg.extent / (m - 1);
  auto coord = [&](int i) { return -vg.extent + i * h; };

  auto check_bound = [&](std::span<const double> xi) {
    double p;
    try {
      p = sym.value(xi);
    } catch (const std::exception&) {
      p = std::nan("");
    }
    const double r2s = std::pow(norm2(xi), sym.order());
    const double lower = sym.A() * r2s + sym.c();
    const double upper = sym.B() * r2s + sym.upper_offset();
    if (!std::isfinite(p) || !leq_with_slack(lower, p) || !leq_with_slack(p, upper)) {
      rep.ass1_ok = false;
      rep.witness = std::vector<double>(xi.begin(), xi.end());
      std::ostringstream os;
      os << "bound violated at xi=" << format_point(xi) << ": p=" << p << ", lower=" << lower
         << ", upper=" << upper;
      rep.detail = os.str();
      return false;
    }
    return true;
  };

  // Tensor grid then random points.
  std::vector<double> xi(dim);
  std::size_t count = 1;
  for (int a = 0; a < dim; ++a) count *= static_cast<std::size_t>(m);
  for (std::size_t lin = 0; lin < count && rep.ass1_ok; ++lin) {
    std::size_t rest = lin;
    for (int a = dim - 1; a >= 0; --a) {
      xi[a] = coord(static_cast<int>(rest % m));
      rest /= m;
    }
    check_bound(xi);
  }
  std::mt19937_64 rng(vg.seed);
  std::uniform_real_distribution<double> unif(-vg.extent, vg.extent);
  for (int r = 0; r < vg.random_points && rep.ass1_ok; ++r) {
    for (auto& x : xi) x = unif(rng);
    check_bound(xi);
  }

  if (dim == 1) return rep;

  // Transverse profiles: for each parallel coordinate, walk radii outward along
  // the transverse coordinate axes and the transverse diagonal.
  const int axis = sym.axis() % dim;
  std::vector<std::vector<double>> dirs;
  std::vector<int> transverse;
  for (int a = 0; a < dim; ++a) {
    if (a != axis) transverse.push_back(a);
  }
  for (int a : transverse) {
    std::vector<double> d(dim, 0.0);
    d[a] = 1.0;
    dirs.push_back(d);
  }
  if (transverse.size() > 1) {
    std::vector<double> d(dim, 0.0);
    for (int a : transverse) d[a] = 1.0 / std::sqrt(static_cast<double>(transverse.size()));
    dirs.push_back(d);
  }
  const double dr = vg.extent / m;
  std::vector<double> prev(dirs.size());
  auto fail = [&](const char* what) {
    rep.ass2_ok = false;
    if (!rep.witness) rep.witness = xi;
    if (!rep.detail.empty()) rep.detail += "; ";
    rep.detail += std::string(what) + " at xi=" + format_point(xi);
  };
  for (int i = 0; i < m && rep.ass2_ok; ++i) {
    const double par = coord(i);
    for (int j = 0; j <= m && rep.ass2_ok; ++j) {
      const double r = j * dr;
      double ref = 0.0;
      for (std::size_t d = 0; d < dirs.size(); ++d) {
        for (int a = 0; a < dim; ++a) xi[a] = dirs[d][a] * r;
        xi[axis] = par;
        const double p = sym.value(xi);
        if (!std::isfinite(p)) {
          fail("symbol not finite");
          break;
        }
        if (d == 0) ref = p;
        if (std::abs(p - ref) > 1e-12 * std::max(1.0, std::abs(ref))) {
          fail("symbol not cylindrically symmetric");
          break;
        }
        if (j > 0 && !(p > prev[d])) {
          fail("transverse profile not strictly increasing");
          break;
        }
        prev[d] = p;
      }
    }
  }
  return rep;
}

double sigma_v(const BoostedSymbol& bsym, const SigmaSearch& search) {
  const Symbol& sym = bsym.base;
  const double speed = bsym.speed();
  if (sym.order() < 0.5) {
    throw HypothesisViolated("symbol order s = " + std::to_string(sym.order()) +
                             " < 1/2: the boost term cannot be controlled");
  }
  if (sym.order() == 0.5 && speed >= sym.A()) {
    throw HypothesisViolated("order s = 1/2 requires |v| < A (|v| = " + std::to_string(speed) +
                             ", A = " + std::to_string(sym.A()) + ")");
  }
  const std::size_t dim = std::max<std::size_t>(bsym.v.size(), 1);
  std::vector<double> dir(dim, 0.0);
  if (speed > 0.0) {
    for (std::size_t i = 0; i < dim; ++i) dir[i] = bsym.v[i] / speed;
  } else {
    dir[static_cast<std::size_t>(sym.axis()) % dim] = 1.0;
  }
  std::vector<double> xi(dim);
  auto g = [&](double t) {
    for (std::size_t i = 0; i < dim; ++i) xi[i] = t * dir[i];
    return sym.value(xi) - speed * t;
  };

  double extent = 1.0;
  for (;;) {
    if (extent > search.max_extent) {
      throw UnboundedBelow("boosted symbol still decreasing at |xi| = " + std::to_string(extent));
    }
    const double gp = g(extent), gm = g(-extent);
    if (!std::isfinite(gp) || !std::isfinite(gm)) {
      throw UnboundedBelow("boosted symbol not finite along the search line");
    }
    if (std::min(gp, gm) < search.floor) {
      throw UnboundedBelow("boosted symbol fell below " + std::to_string(search.floor));
    }
    if (gp > g(0.5 * extent) && gm > g(-0.5 * extent)) break;
    extent *= 2.0;
  }

  const int n = std::max(search.scan_points, 3);
  const double h = 2.0 * extent / (n - 1);
  int best = 0;
  double best_val = g(-extent);
  for (int i = 1; i < n; ++i) {
    const double val = g(-extent + i * h);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }

  double lo = -extent + std::max(best - 1, 0) * h;
  double hi = -extent + std::min(best + 1, n - 1) * h;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  while (hi - lo > search.tolerance) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = g(x2);
    }
  }
  return std::min({best_val, f1, f2, g(0.5 * (lo + hi))});
}

Field galilean_gauge(const Field& q, std::span<const double> v) {
  const Grid& g = q.grid();
  if (static_cast<int>(v.size()) != g.dim()) {
    throw InvalidArgument("galilean_gauge: velocity dimension does not match the grid");
  }
  std::vector<cplx> out(q.physical().begin(), q.physical().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto x = g.point(i);
    double phase = 0.0;
    for (int a = 0; a < g.dim(); ++a) phase += 0.5 * v[a] * x[a];
    out[i] *= std::polar(1.0, phase);
  }
  return Field::from_physical(g, std::move(out));
}

}  // namespace gnls
