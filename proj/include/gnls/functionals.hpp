#pragma once

#include <vector>

#include "gnls/field.hpp"
#include "gnls/symbols.hpp"

namespace gnls {

/// W(xi) = p(xi) - v.xi + omega at every lattice frequency (FFT order).
std::vector<double> symbol_weights(const Grid& grid, const BoostedSymbol& bsym, double omega);

struct QuadForm {
  double value = 0.0;
  /// Set when W < 0 somewhere on the lattice, i.e. omega <= -Sigma_v there.
  bool negative_weight = false;
};

/// <f, (P_v(D) + omega) f> = sum W(xi) |f^(xi)|^2 dxi.
QuadForm quad_form(const Field& f, const BoostedSymbol& bsym, double omega);
/// Same sum with precomputed weights.
double quad_form(const Field& f, const std::vector<double>& weights);

struct EnergyMass {
  double energy = 0.0;
  double mass = 0.0;
};

/// E = <f, P f>/2 - |f|_{2s+2}^{2s+2}/(2s+2), M = |f|_2^2 with s = sigma.
EnergyMass energy_mass(const Field& f, const Symbol& sym, int sigma);

}  // namespace gnls
