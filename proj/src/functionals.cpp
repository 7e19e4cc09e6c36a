#include "gnls/functionals.hpp"

#include "gnls/error.hpp"

namespace gnls {

std::vector<double> symbol_weights(const Grid& grid, const BoostedSymbol& bsym, double omega) {
  if (!bsym.v.empty() && static_cast<int>(bsym.v.size()) != grid.dim()) {
    throw InvalidArgument("velocity dimension does not match the grid");
  }
  std::vector<double> w(grid.total());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto xi = grid.frequency(i);
    w[i] = bsym.value(std::span<const double>(xi.data(), grid.dim())) + omega;
  }
  return w;
}

double quad_form(const Field& f, const std::vector<double>& weights) {
  const auto spec = f.spectrum();
  if (weights.size() != spec.size()) throw InvalidArgument("quad_form: weight size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) sum += weights[i] * std::norm(spec[i]);
  return sum * f.grid().freq_cell_volume();
}

QuadForm quad_form(const Field& f, const BoostedSymbol& bsym, double omega) {
  const auto w = symbol_weights(f.grid(), bsym, omega);
  QuadForm q;
  q.value = quad_form(f, w);
  for (double x : w) {
    if (x < 0.0) {
      q.negative_weight = true;
      break;
    }
  }
  return q;
}

EnergyMass energy_mass(const Field& f, const Symbol& sym, int sigma) {
  if (sigma < 1) throw InvalidArgument("energy_mass: sigma must be a positive integer");
  const BoostedSymbol rest{sym, {}};
  EnergyMass em;
  em.mass = norm_L2(f) * norm_L2(f);
  em.energy = 0.5 * quad_form(f, symbol_weights(f.grid(), rest, 0.0)) -
              integral_abs_pow(f, 2 * sigma + 2) / (2.0 * sigma + 2.0);
  return em;
}

}  // namespace gnls
