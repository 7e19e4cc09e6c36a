#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gnls/error.hpp"
#include "gnls/functionals.hpp"
#include "gnls/symbols.hpp"
#include "oracles.hpp"

using namespace gnls;

namespace {

// inf over a 2D box of p(xi) - v.xi by nested scans; no use of symmetry.
double box_infimum(const BoostedSymbol& b, double extent) {
  auto inner = [&](double x) {
    return oracle::minimize_1d(
        [&](double y) {
          const double xi[2] = {x, y};
          return b.value(xi);
        },
        -extent, extent, 401);
  };
  return oracle::minimize_1d(inner, -extent, extent, 401);
}

}  // namespace

TEST_CASE("symbol values") {
  const double a[2] = {3.0, 4.0};
  CHECK(Symbol::fractional(1.0).value(a) == doctest::Approx(25.0));
  CHECK(Symbol::fractional(0.5).value(a) == doctest::Approx(5.0));
  const double two[1] = {2.0};
  CHECK(Symbol::biharmonic(1.0).value(two) == doctest::Approx(12.0));
  CHECK(Symbol::biharmonic(-1.0).value(two) == doctest::Approx(20.0));
  const double zero[3] = {0.0, 0.0, 0.0};
  CHECK(Symbol::sqrt_klein_gordon(0.0).value(zero) == 0.0);
  CHECK(Symbol::sqrt_klein_gordon(0.0).kind() == SymbolKind::HalfWave);
  CHECK(Symbol::sqrt_klein_gordon(3.0).value(a) == doctest::Approx(std::sqrt(34.0)));
  CHECK(Symbol::half_wave().value(a) == doctest::Approx(5.0));
  const double hws[3] = {1.0, 3.0, 4.0};
  CHECK(Symbol::anisotropic_hws(2.0).value(hws) == doctest::Approx(1.0 + 2.0 * 5.0));
  CHECK(Symbol::anisotropic_hws(2.0).with_axis(1).value(hws) == doctest::Approx(9.0 + 2.0 * std::sqrt(17.0)));
}

TEST_CASE("boosted symbol subtracts v.xi") {
  const BoostedSymbol b{Symbol::fractional(1.0), {0.5, -1.0}};
  const double xi[2] = {2.0, 3.0};
  CHECK(b.value(xi) == doctest::Approx(13.0 - 1.0 + 3.0));
  CHECK(b.speed() == doctest::Approx(std::sqrt(1.25)));
}

TEST_CASE("eval_symbol rejects non-finite frequencies") {
  const double bad[1] = {std::nan("")};
  CHECK_THROWS_AS(eval_symbol(Symbol::fractional(1.0), bad), InvalidArgument);
  const double inf[2] = {1.0, INFINITY};
  CHECK_THROWS_AS(eval_symbol(Symbol::half_wave(), inf), InvalidArgument);
}

TEST_CASE("factories reject bad parameters") {
  CHECK_THROWS_AS(Symbol::fractional(-1.0), InvalidArgument);
  CHECK_THROWS_AS(Symbol::sqrt_klein_gordon(-1.0), InvalidArgument);
  CHECK_THROWS_AS(Symbol::anisotropic_hws(0.0), InvalidArgument);
}

TEST_CASE("assumption checks") {
  for (int n = 1; n <= 3; ++n) {
    const auto r = check_assumptions(Symbol::fractional(2.0), n);
    CHECK(r.ass1_ok);
    CHECK(r.ass2_ok);
    CHECK_FALSE(r.witness.has_value());
  }
  CHECK(check_assumptions(Symbol::sqrt_klein_gordon(1.0), 3).ass1_ok);
  CHECK(check_assumptions(Symbol::biharmonic(-2.0), 2).ass2_ok);

  SUBCASE("negative symbol fails the lower bound with a witness") {
    const auto neg = Symbol::custom(
        "neg", [](std::span<const double> xi) { return -(xi[0] * xi[0] + (xi.size() > 1 ? xi[1] * xi[1] : 0.0)); },
        1.0, 1.0, 1.0, 0.0);
    const auto r = check_assumptions(neg, 2);
    CHECK_FALSE(r.ass1_ok);
    REQUIRE(r.witness.has_value());
    const auto& w = *r.witness;
    CHECK(neg.value(w) < neg.A() * (w[0] * w[0] + w[1] * w[1]) + neg.c());
    CHECK_FALSE(r.detail.empty());
  }
  SUBCASE("biharmonic with mu > 0 has a non-monotone transverse profile") {
    const auto r = check_assumptions(Symbol::biharmonic(1.0), 2);
    CHECK(r.ass1_ok);
    CHECK_FALSE(r.ass2_ok);
  }
  SUBCASE("a symbol that is not cylindrically symmetric fails ass2") {
    const auto skew = Symbol::custom(
        "skew", [](std::span<const double> xi) { return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + 0.1 * xi[1] * xi[1]; },
        1.0, 1.0, 1.1, 0.0);
    CHECK_FALSE(check_assumptions(skew, 3).ass2_ok);
  }
  SUBCASE("check_assumptions never throws") {
    const auto nan = Symbol::custom("nan", [](std::span<const double>) { return std::nan(""); }, 1.0, 1.0, 1.0, 0.0);
    AssumptionReport r;
    CHECK_NOTHROW(r = check_assumptions(nan, 2));
    CHECK_FALSE(r.ass1_ok);
  }
}

TEST_CASE("Sigma_v against a brute-force box search") {
  struct Case {
    BoostedSymbol b;
    double expected;
  };
  const Case cases[] = {
      {{Symbol::fractional(1.0), {2.0, 0.0}}, -1.0},
      {{Symbol::half_wave(), {0.5, 0.0}}, 0.0},
      {{Symbol::sqrt_klein_gordon(1.0), {0.6, 0.0}}, 0.8},
      {{Symbol::fractional(1.0), {0.0, 0.0}}, 0.0},
      {{Symbol::biharmonic(0.0), {1.0, 0.0}}, -0.75 * std::pow(0.25, 1.0 / 3.0)},
  };
  for (const auto& c : cases) {
    const double got = sigma_v(c.b);
    CHECK(got == doctest::Approx(c.expected).epsilon(1e-9));
    CHECK(got == doctest::Approx(box_infimum(c.b, 4.0)).epsilon(1e-6));
  }
  // The speed need not lie along the symmetry axis for radial symbols.
  const BoostedSymbol oblique{Symbol::fractional(1.0), {1.2, 1.6}};
  CHECK(sigma_v(oblique) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("Sigma_v hypothesis errors") {
  CHECK_THROWS_AS(sigma_v({Symbol::fractional(0.25), {0.0}}), HypothesisViolated);
  CHECK_THROWS_AS(sigma_v({Symbol::half_wave(), {1.0}}), HypothesisViolated);
  CHECK_THROWS_AS(sigma_v({Symbol::sqrt_klein_gordon(2.0), {1.5, 0.0}}), HypothesisViolated);
  const auto neg = Symbol::custom("neg", [](std::span<const double> xi) { return -xi[0] * xi[0]; }, 1.0, 1.0, 1.0, 0.0);
  CHECK_THROWS_AS(sigma_v({neg, {0.0}}), UnboundedBelow);
}

TEST_CASE("Galilean gauge") {
  const Grid g = Grid::cube(2, 32, 6.0);
  const Field q = Field::sample(g, [](const auto& x) { return cplx{std::exp(-x[0] * x[0] - 2.0 * x[1] * x[1]), 0.3 * x[1]}; });
  const double zero[2] = {0.0, 0.0};
  const Field same = galilean_gauge(q, zero);
  for (std::size_t i = 0; i < q.size(); ++i) CHECK(same.physical()[i] == q.physical()[i]);
  const double v[2] = {0.7, -0.4};
  const Field b = galilean_gauge(q, v);
  for (std::size_t i = 0; i < q.size(); i += 37) {
    CHECK(std::abs(b.physical()[i]) == doctest::Approx(std::abs(q.physical()[i])));
    const auto x = g.point(i);
    CHECK(std::abs(b.physical()[i] - q.physical()[i] * std::polar(1.0, 0.5 * (v[0] * x[0] + v[1] * x[1]))) < 1e-14);
  }
  CHECK(norm_L2(b) == doctest::Approx(norm_L2(q)).epsilon(1e-14));
}

TEST_CASE("quadratic form and energy") {
  const Grid g = Grid::cube(1, 1024, 20.0 * std::numbers::pi);
  const Field gauss = Field::sample(g, [](const auto& x) { return cplx{std::exp(-0.5 * x[0] * x[0])}; });
  const BoostedSymbol lap{Symbol::fractional(1.0), {0.0}};
  const auto qf = quad_form(gauss, lap, 1.0);
  CHECK(qf.value == doctest::Approx(1.5 * std::sqrt(std::numbers::pi)).epsilon(1e-12));
  CHECK_FALSE(qf.negative_weight);
  CHECK(quad_form(gauss, BoostedSymbol{Symbol::fractional(1.0), {3.0}}, 1.0).negative_weight);

  const Field sech = Field::sample(g, [](const auto& x) { return cplx{std::sqrt(2.0) * oracle::sech(x[0])}; });
  const auto em = energy_mass(sech, Symbol::fractional(1.0), 1);
  CHECK(em.mass == doctest::Approx(oracle::kSechMass).epsilon(1e-12));
  CHECK(em.energy == doctest::Approx(0.5 * oracle::kSechKinetic - 0.25 * oracle::kSechQuartic).epsilon(1e-10));

  // Weights agree with direct symbol evaluation.
  const auto w = symbol_weights(g, BoostedSymbol{Symbol::sqrt_klein_gordon(1.0), {0.5}}, 0.25);
  for (std::size_t k = 0; k < w.size(); k += 101) {
    const double xi = g.frequency(k)[0];
    CHECK(w[k] == doctest::Approx(std::sqrt(xi * xi + 1.0) - 0.5 * xi + 0.25));
  }
}
