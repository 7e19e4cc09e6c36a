#include <doctest.h>

#include <numbers>
#include <random>

#include "gnls/error.hpp"
#include "gnls/verify.hpp"
#include "oracles.hpp"

using namespace gnls;

namespace {

std::size_t lattice(const Grid& g, int s) { return static_cast<std::size_t>(s < 0 ? s + g.size(0) : s); }

// 1D field whose spectrum is 1 exactly on the listed signed indices.
Field spectral_indicator(const Grid& g, const std::vector<int>& ks) {
  std::vector<cplx> spec(g.total());
  for (int k : ks) spec[lattice(g, k)] = 1.0;
  return Field::from_spectrum(g, spec);
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> r;
  for (int k = lo; k <= hi; ++k) r.push_back(k);
  return r;
}

const Grid kLine = Grid::cube(1, 64, 10.0);

}  // namespace

TEST_CASE("support set") {
  const auto S = support_set(spectral_indicator(kLine, range(-2, 2)));
  CHECK(S.count() == 5);
  CHECK(S.mask[lattice(kLine, -2)] == 1);
  CHECK(S.mask[lattice(kLine, 3)] == 0);
  CHECK_THROWS_AS(support_set(Field::zeros(kLine)), ZeroField);
}

TEST_CASE("connectivity on the signed lattice") {
  CHECK(is_connected(support_set(spectral_indicator(kLine, range(-2, 2)))));
  // Indices 31 and -32 are neighbours only with wrap-around, which is not used.
  CHECK_FALSE(is_connected(support_set(spectral_indicator(kLine, {31, -32}))));
  const auto blobs = support_set(spectral_indicator(kLine, {-6, -5, 5, 6}));
  std::vector<int> labels;
  CHECK(label_components(blobs, labels) == 2);
  CHECK(labels[lattice(kLine, -6)] == labels[lattice(kLine, -5)]);
  CHECK(labels[lattice(kLine, -5)] != labels[lattice(kLine, 5)]);
  CHECK(labels[lattice(kLine, 0)] == -1);

  const Grid sq = Grid::cube(2, 16, 3.0);
  SupportSet diag{sq, std::vector<std::uint8_t>(sq.total(), 0), 1e-8};
  diag.mask[sq.ravel({0, 0, 0})] = 1;
  diag.mask[sq.ravel({1, 1, 0})] = 1;
  CHECK_FALSE(is_connected(diag));
  diag.mask[sq.ravel({1, 0, 0})] = 1;
  CHECK(is_connected(diag));
}

TEST_CASE("dilation and convolution against pair enumeration") {
  const Grid g(2, {16, 8}, {1.0, 1.0});
  std::mt19937_64 rng(21);
  std::bernoulli_distribution coin(0.15);
  for (int t = 0; t < 5; ++t) {
    std::vector<std::uint8_t> a(g.total()), b(g.total());
    for (auto& x : a) x = coin(rng);
    for (auto& x : b) x = coin(rng);
    CHECK(dilate(g, a, b) == oracle::pair_sum(g, a, b));

    std::vector<double> fa(a.begin(), a.end()), fb(b.begin(), b.end());
    const auto conv = lattice_convolution(g, fa, fb);
    const auto support = oracle::pair_sum(g, a, b);
    for (std::size_t i = 0; i < conv.size(); ++i) {
      if (support[i] == 1) {
        CHECK(conv[i] >= 1.0 - 1e-9);
      } else {
        CHECK(std::abs(conv[i]) < 1e-9);
      }
    }
  }
}

TEST_CASE("Minkowski defect") {
  // C = { xi : 3 xi in the box } = [-10, 10] for N = 64.
  CHECK(minkowski_defect(support_set(spectral_indicator(kLine, range(-32, 31))), 3) == 0.0);
  CHECK(minkowski_defect(support_set(spectral_indicator(kLine, range(0, 31))), 3) == 0.0);
  CHECK(minkowski_defect(support_set(spectral_indicator(kLine, range(1, 31))), 3) == doctest::Approx(2.0 / 10.0));
  CHECK(minkowski_defect(support_set(spectral_indicator(kLine, range(-4, 4))), 3) == doctest::Approx(12.0 / 9.0));
  CHECK(minkowski_defect(support_set(spectral_indicator(kLine, {-8, -7, 7, 8})), 3) == doctest::Approx(1.0));

  const Grid sq = Grid::cube(2, 32, 5.0);
  SupportSet full{sq, std::vector<std::uint8_t>(sq.total(), 1), 1e-8};
  CHECK(minkowski_defect(full, 5) == 0.0);
}

TEST_CASE("phase affinity recovers translation and global phase") {
  const Grid g = Grid::cube(2, 64, 4.0 * std::numbers::pi);
  const double a0 = 1.3, a1 = -0.6;
  const Field q = Field::sample(g, [&](const auto& x) {
    return std::polar(1.0, std::numbers::pi / 3.0) * std::exp(-(x[0] - a0) * (x[0] - a0) - (x[1] - a1) * (x[1] - a1));
  });
  const auto S = support_set(q, 1e-8);
  const auto fit = phase_affinity(q, S);
  CHECK(fit.alpha == doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-8));
  REQUIRE(fit.beta.size() == 2);
  CHECK(fit.beta[0] == doctest::Approx(-a0).epsilon(1e-8));
  CHECK(fit.beta[1] == doctest::Approx(-a1).epsilon(1e-8));
  CHECK(fit.residual < 1e-6);

  CHECK_THROWS_AS(phase_affinity(spectral_indicator(kLine, {-6, 6}), support_set(spectral_indicator(kLine, {-6, 6}))),
                  DisconnectedSupport);
}

TEST_CASE("reflection defects") {
  const Grid g = Grid::cube(2, 32, 6.0);
  const Field radial = Field::sample(g, [](const auto& x) { return cplx{std::exp(-x[0] * x[0] - 2.0 * x[1] * x[1])}; });
  CHECK(cylindrical_defect(radial, 0) < 1e-14);
  CHECK(conjugation_defect(radial) < 1e-14);
  const Field off = Field::sample(g, [](const auto& x) { return cplx{std::exp(-x[0] * x[0] - (x[1] - 0.5) * (x[1] - 0.5))}; });
  CHECK(cylindrical_defect(off, 0) > 0.1);
  CHECK(cylindrical_defect(off, 1) < 1e-14);

  const Grid line = Grid::cube(1, 128, 8.0);
  const Field odd_imag = Field::sample(line, [](const auto& x) { return cplx{0.0, x[0] * std::exp(-x[0] * x[0])}; });
  CHECK(conjugation_defect(odd_imag) < 1e-14);
  const Field odd_real = Field::sample(line, [](const auto& x) { return cplx{x[0] * std::exp(-x[0] * x[0])}; });
  CHECK(conjugation_defect(odd_real) == doctest::Approx(2.0));
  CHECK(modulus_rearranged_defect(odd_real, 0) == 0.0);

  const Field lopsided = Field::sample(g, [](const auto& x) {
    return std::exp(-x[0] * x[0] - x[1] * x[1]) * std::polar(1.0, 2.0 * x[1]);
  });
  CHECK(modulus_rearranged_defect(lopsided, 0) > 0.1);
  CHECK(modulus_rearranged_defect(radial, 0) < 1e-12);
}

TEST_CASE("1D support shapes") {
  auto shape = [](const std::vector<int>& ks) { return classify_support_1d(support_set(spectral_indicator(kLine, ks))); };
  CHECK(shape(range(-31, 31)) == SupportShape::Full);
  CHECK(shape(range(-32, 31)) == SupportShape::Full);
  CHECK(shape(range(-3, 5)) == SupportShape::Centered);
  CHECK(shape(range(0, 31)) == SupportShape::PositiveHalf);
  CHECK(shape(range(1, 31)) == SupportShape::PositiveHalf);
  CHECK(shape(range(-31, 0)) == SupportShape::NegativeHalf);
  CHECK(shape(range(4, 9)) == SupportShape::Other);
  CHECK(shape({-4, 4}) == SupportShape::Other);
  CHECK(to_string(SupportShape::PositiveHalf) == "positive_half");
}

TEST_CASE("symmetry report") {
  const Grid g = Grid::cube(2, 64, 4.0 * std::numbers::pi);
  const Field good = Field::sample(g, [](const auto& x) {
    return std::exp(-x[0] * x[0] - x[1] * x[1]) * std::polar(1.0, 0.4 * x[0] + 0.2);
  });
  const auto ok = symmetry_report(good, 0, 1);
  CHECK(ok.pass);
  CHECK(ok.failures.empty());
  CHECK(ok.connected);

  const Field broken = Field::sample(g, [](const auto& x) {
    return cplx{std::exp(-x[0] * x[0] - x[1] * x[1]) * (1.0 + 0.3 * x[1])};
  });
  const auto bad = symmetry_report(broken, 0, 1);
  CHECK_FALSE(bad.pass);
  CHECK(bad.s1_defect > 1e-3);
  CHECK(bad.failures.find("s1") != std::string::npos);

  const auto split = symmetry_report(spectral_indicator(kLine, {-6, 6}), 0, 1);
  CHECK_FALSE(split.pass);
  CHECK_FALSE(split.connected);
  CHECK(std::isnan(split.phase.alpha));
}
