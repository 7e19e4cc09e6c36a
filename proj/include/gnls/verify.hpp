#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gnls/field.hpp"

namespace gnls {

/// Thresholded frequency support { |Q^| > tau max |Q^| }.
struct SupportSet {
  Grid grid;
  std::vector<std::uint8_t> mask;
  double tau = 1e-8;

  std::size_t count() const;
};

SupportSet support_set(const Field& Q, double tau = 1e-8);

/// One face-adjacent component on the signed lattice (no wrap-around).
/// The empty mask counts as connected.
bool is_connected(const SupportSet& S);
/// Component label per lattice point (-1 outside the mask); returns the count.
int label_components(const SupportSet& S, std::vector<int>& labels);

/// Minkowski sum of two lattice masks, clipped to the lattice box.
std::vector<std::uint8_t> dilate(const Grid& grid, const std::vector<std::uint8_t>& a,
                                 const std::vector<std::uint8_t>& b);

/// Linear convolution of two lattice functions on the signed lattice,
/// clipped to the box. Plain sum, no quadrature weight.
std::vector<double> lattice_convolution(const Grid& grid, std::span<const double> a,
                                        std::span<const double> b);

/// |S delta (S + ... + S)| / |S|, both counted on the points xi with
/// m xi inside the box, so that box clipping does not register as a defect.
double minkowski_defect(const SupportSet& S, int m);

struct PhaseFit {
  double alpha = 0.0;
  std::vector<double> beta;
  double residual = 0.0;
};

/// Fits arg Q^(xi) ~ alpha + beta.xi over the mask, weights |Q^|^2, after
/// breadth-first unwrapping from the largest bin. A translation x -> Q(x - a)
/// gives beta = -a. Throws DisconnectedSupport when S has several components.
PhaseFit phase_affinity(const Field& Q, const SupportSet& S);

/// max over transverse reflections (and, in 3D, the transverse axis swap) of
/// max|Q - Q o T| / max|Q|.
double cylindrical_defect(const Field& Q, int axis);

/// |Q - conj(Q(-x))| / |Q| in L^2.
double conjugation_defect(const Field& Q);

/// | |Q^| - |Q^|^{*e} | / |Q^|; zero for n = 1.
double modulus_rearranged_defect(const Field& Q, int axis);

enum class SupportShape { Full, Centered, PositiveHalf, NegativeHalf, Other };
std::string to_string(SupportShape shape);
/// 1D only: shape of the mask on the signed lattice, Nyquist bin ignored.
SupportShape classify_support_1d(const SupportSet& S);

struct SymmetryThresholds {
  double tau = 1e-8;
  double s1 = 1e-5;
  double s2 = 1e-5;
  double modrearr = 1e-5;
  double minkowski = 0.05;
  double phase_residual = 1e-6;
};

struct SymmetryReport {
  double s1_defect = 0.0;
  double s2_defect = 0.0;
  double modulus_rearranged_defect = 0.0;
  PhaseFit phase;
  bool connected = false;
  double minkowski_defect = 0.0;
  SupportShape shape = SupportShape::Other;
  bool pass = false;
  std::string failures;
};

/// Canonicalizes Q, then fills every defect. A disconnected support yields a
/// failed report (phase fields NaN, s2 measured without phase removal).
SymmetryReport symmetry_report(const Field& Q, int axis, int sigma,
                               const SymmetryThresholds& thresholds = {});

}  // namespace gnls
