#include "gnls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gnls/error.hpp"
#include "gnls/functionals.hpp"

namespace gnls {
namespace {

double freq_dot(const Grid& g, std::span<const cplx> a, std::span<const cplx> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (std::conj(a[i]) * b[i]).real();
  return sum * g.freq_cell_volume();
}

std::vector<cplx> nonlinearity_spectrum(const Field& q, int sigma) {
  const Grid& g = q.grid();
  std::vector<cplx> nl(q.physical().begin(), q.physical().end());
  for (auto& z : nl) {
    const double a = std::norm(z);
    double w = a;
    for (int i = 1; i < sigma; ++i) w *= a;
    z *= w;
  }
  auto spec = transform(g, nl, Direction::Forward);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (g.on_nyquist(i)) spec[i] = cplx{};
  }
  return spec;
}

double quotient(const Field& u, const std::vector<double>& w, int sigma) {
  const double denom = integral_abs_pow(u, 2 * sigma + 2);
  if (!(denom > 0.0)) throw ZeroField();
  return std::pow(quad_form(u, w), sigma + 1) / denom;
}

struct Residual {
  double relative, kappa, unit;
};

Residual residual_of(const Grid& g, const std::vector<double>& w, std::span<const cplx> q,
                     std::span<const cplx> nl) {
  double wq2 = 0.0, n2 = 0.0, cross = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (g.on_nyquist(i)) continue;
    const cplx wq = w[i] * q[i];
    wq2 += std::norm(wq);
    n2 += std::norm(nl[i]);
    cross += (std::conj(nl[i]) * wq).real();
  }
  if (!(wq2 > 0.0)) throw ZeroField();
  const double kappa = n2 > 0.0 ? cross / n2 : 0.0;
  double r = 0.0, u = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (g.on_nyquist(i)) continue;
    const cplx wq = w[i] * q[i];
    r += std::norm(wq - kappa * nl[i]);
    u += std::norm(wq - nl[i]);
  }
  return {std::sqrt(r / wq2), kappa, std::sqrt(u / wq2)};
}

}  // namespace

double critical_sigma(double s, int n) {
  return s < 0.5 * n ? 2.0 * s / (n - 2.0 * s) : kInfinity;
}

Problem make_problem(BoostedSymbol bsym, double omega, int sigma, const Grid& grid) {
  if (sigma < 1) throw InvalidArgument("sigma must be a positive integer");
  if (bsym.v.empty()) bsym.v.assign(grid.dim(), 0.0);
  if (static_cast<int>(bsym.v.size()) != grid.dim()) {
    throw InvalidArgument("velocity has " + std::to_string(bsym.v.size()) + " components on a " +
                          std::to_string(grid.dim()) + "-dimensional grid");
  }
  if (!std::isfinite(omega)) throw InvalidArgument("omega must be finite");
  const double s = bsym.base.order();
  const double crit = critical_sigma(s, grid.dim());
  if (!(sigma < crit)) {
    std::ostringstream os;
    os << "sigma = " << sigma << " is not below the energy-critical exponent sigma_* = " << crit;
    throw HypothesisViolated(os.str());
  }
  Problem p{std::move(bsym), omega, sigma, grid, 0.0};
  p.sigma_v = sigma_v(p.bsym);
  if (!(omega > -p.sigma_v)) {
    std::ostringstream os;
    os << "hypothesis omega > -Sigma_v fails: omega = " << omega << ", Sigma_v = " << p.sigma_v;
    throw HypothesisViolated(os.str());
  }
  return p;
}

double weinstein(const Problem& prob, const Field& u) {
  return quotient(u, symbol_weights(u.grid(), prob.bsym, prob.omega), prob.sigma);
}

ElResidual el_residual(const Problem& prob, const Field& Q) {
  const auto w = symbol_weights(Q.grid(), prob.bsym, prob.omega);
  const auto nl = nonlinearity_spectrum(Q, prob.sigma);
  const Residual r = residual_of(Q.grid(), w, Q.spectrum(), nl);
  return {r.relative, r.kappa, r.unit};
}

Field initial_guess(const Problem& prob, const SolveOptions& opts) {
  const int n = prob.grid.dim();
  const double w2 = opts.width * opts.width;
  return Field::sample(prob.grid, [&](const std::array<double, 3>& x) {
    double r2 = 0.0, phase = 0.0;
    for (int a = 0; a < n; ++a) {
      r2 += x[a] * x[a];
      if (opts.boost_phase) phase += 0.5 * prob.bsym.v[a] * x[a];
    }
    return std::polar(std::exp(-0.5 * r2 / w2), phase);
  });
}

Field canonicalize(const Field& Q) {
  const Grid& g = Q.grid();
  const auto c = centroid(Q);
  std::vector<double> shift(g.dim());
  for (int a = 0; a < g.dim(); ++a) shift[a] = -c[a];
  Field out = translated(Q, shift);
  const auto spec = out.spectrum();
  cplx ref = spec[0];
  if (std::abs(ref) <= 1e-12 * norm_L2_spectral(out)) {
    ref = *std::max_element(spec.begin(), spec.end(),
                            [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  }
  if (std::abs(ref) == 0.0) throw ZeroField();
  return out.scaled(std::conj(ref) / std::abs(ref));
}

SolveReport minimize(const Problem& prob, const SolveOptions& opts) {
  return minimize(prob, initial_guess(prob, opts), opts);
}

SolveReport minimize(const Problem& prob, const Field& init, const SolveOptions& opts) {
  const Grid& g = prob.grid;
  if (!(init.grid() == g)) throw InvalidArgument("initial field lives on a different grid");
  const auto w = symbol_weights(g, prob.bsym, prob.omega);
  for (double x : w) {
    if (!(x > 0.0)) throw HypothesisViolated("P_v + omega is not positive on the lattice (omega > -Sigma_v)");
  }
  const double gamma = (2.0 * prob.sigma + 1.0) / (2.0 * prob.sigma);

  Field q = init.without_nyquist();
  if (norm_L2_spectral(q) == 0.0) throw ZeroField();
  double J = quotient(q, w, prob.sigma);

  SolveReport rep;
  double kappa = 1.0;
  for (int it = 0; it <= opts.max_iter; ++it) {
    const auto nl = nonlinearity_spectrum(q, prob.sigma);
    const auto qs = q.spectrum();
    std::vector<cplx> wq(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) wq[i] = w[i] * qs[i];
    const double num = freq_dot(g, qs, wq);
    const double den = freq_dot(g, qs, nl);
    if (!(den > 0.0)) throw ZeroField();
    const double M = num / den;
    const Residual r = residual_of(g, w, qs, nl);
    rep.trace.push_back({it, J, r.relative, M});
    rep.iterations = it;
    if (r.relative < opts.tol) {
      rep.converged = true;
      kappa = r.kappa;
      break;
    }
    if (it == opts.max_iter) break;

    const double factor = std::pow(M, gamma);
    std::vector<cplx> next(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) next[i] = factor * nl[i] / w[i];
    Field cand = Field::from_spectrum(g, next);
    double Jc = quotient(cand, w, prob.sigma);
    const double slack = 1e-12 * std::max(1.0, J);
    if (Jc > J + slack) {
      double t = 1.0;
      Field best = cand;
      double Jbest = Jc;
      for (int h = 0; h < opts.max_halvings; ++h) {
        t *= 0.5;
        std::vector<cplx> mix(qs.size());
        for (std::size_t i = 0; i < qs.size(); ++i) mix[i] = (1.0 - t) * qs[i] + t * next[i];
        Field trial = Field::from_spectrum(g, std::move(mix));
        const double Jt = quotient(trial, w, prob.sigma);
        if (Jt < Jbest) {
          best = trial;
          Jbest = Jt;
        }
        if (Jt <= J + slack) break;
      }
      cand = best;
      Jc = Jbest;
    }
    q = std::move(cand);
    J = Jc;
  }

  if (rep.converged && kappa > 0.0) q = q.scaled(std::pow(kappa, 1.0 / (2.0 * prob.sigma)));
  rep.Q = canonicalize(q);
  rep.J = weinstein(prob, rep.Q);
  rep.residual = el_residual(prob, rep.Q).relative;
  if (rep.converged && !(rep.residual <= opts.tol)) rep.converged = false;
  return rep;
}

}  // namespace gnls
