#include <catch2/catch_amalgamated.hpp>

#include <polydisc/cauchy.hpp>

#include <random>

#include "oracles.hpp"

using namespace polydisc;
using Catch::Approx;

namespace {

std::mt19937_64 rng_for(const char* tag) {
  std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
  return std::mt19937_64(seq);
}

CPoint random_interior(std::mt19937_64& rng, const Polydisc& disc, double margin) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> c(disc.dim());
  for (std::size_t j = 0; j < disc.dim(); ++j) {
    const double r = margin * disc.radii()[j] * std::sqrt(unit(rng));
    c[j] = disc.center()[j] + r * std::exp(Complex{0.0, angle(rng)});
  }
  return CPoint(std::move(c));
}

IntegrandFn from_oracle(const oracles::SeparableOracle& oracle) {
  return IntegrandFn::scalar([&oracle](const CPoint& z) { return oracle.value(z); });
}

/// First derivative along one axis via a 1-D boundary integral on the slice,
/// used to cross-check mixed partial commutation through nested integrals.
Complex slice_derivative(const std::function<Complex(const CPoint&)>& f, const CPoint& at,
                         std::size_t axis, double radius, int nodes) {
  auto g = IntegrandFn::scalar(
      [&f, &at, axis](const CPoint& u) { return f(at.with_coord(axis, u[0])); });
  Polydisc disc(CPoint({at[axis]}), {radius});
  BoundarySamples s = BoundarySamples::sample(g, disc, {nodes});
  return cauchy_derivative(s, CPoint({at[axis]}), MultiIndex({1})).value[0];
}

}  // namespace

TEST_CASE("derivatives of a constant vanish") {
  auto space = SpaceDescriptor::coordinates(2);
  const VectorValue c(space, {Complex{2.5, 1.0}, Complex{0, -3}});
  auto f = IntegrandFn::vector(space, [&](const CPoint&) { return c; });
  Polydisc disc(CPoint::zero(2), {1.0, 1.0});
  BoundarySamples samples = BoundarySamples::sample(f, disc, {64, 64});
  for (auto beta : {MultiIndex({1, 0}), MultiIndex({0, 1}), MultiIndex({2, 3})}) {
    auto r = cauchy_derivative(samples, CPoint({Complex{0.3, 0.1}, Complex{-0.2, 0.4}}), beta);
    REQUIRE(r.value.seminorm("sup") < 1e-12 * c.seminorm("sup"));
  }
}

TEST_CASE("mixed derivative of z1*z2^2 matches the symbolic oracle") {
  // oracle: d1 d2^2 (z1 z2^2) = 2, exactly, everywhere
  oracles::SeparableOracle oracle{{oracles::monomial_axis(1), oracles::monomial_axis(2)}};
  const CPoint zeta({Complex{0.2, 0}, Complex{0.1, 0}});
  const MultiIndex beta({1, 2});
  REQUIRE(oracle.deriv(beta, zeta) == Complex{2.0, 0.0});

  auto f = from_oracle(oracle);
  BoundarySamples samples =
      BoundarySamples::sample(f, Polydisc(CPoint::zero(2), {1.0, 1.0}), {32, 32});
  auto r = cauchy_derivative(samples, zeta, beta);
  REQUIRE(std::abs(r.value[0] - Complex{2.0, 0.0}) < 1e-11);
  REQUIRE_FALSE(r.margin_warning);
}

TEST_CASE("order zero reproduces the function") {
  auto oracle = oracles::exp_sum_oracle(2);
  auto f = from_oracle(oracle);
  BoundarySamples samples =
      BoundarySamples::sample(f, Polydisc(CPoint::zero(2), {1.0, 1.0}), {64, 64});
  auto r = cauchy_derivative(samples, CPoint::zero(2), MultiIndex::zero(2));
  REQUIRE(std::abs(r.value[0] - Complex{1.0, 0.0}) < 1e-12);
}

TEST_CASE("derivatives at the center match the symbolic oracle up to order 6") {
  const Polydisc disc(CPoint::zero(2), {1.0, 1.0});
  const std::vector<oracles::SeparableOracle> oracle_set = {
      oracles::exp_sum_oracle(2), oracles::cubic_times_linear_oracle(),
      oracles::rational_oracle()};
  for (const auto& oracle : oracle_set) {
    auto f = from_oracle(oracle);
    BoundarySamples samples = BoundarySamples::sample(f, disc, {64, 64});
    for (const auto& beta : multi_indices_up_to(2, 6)) {
      const Complex expected = oracle.deriv(beta, disc.center());
      const Complex got = cauchy_derivative(samples, disc.center(), beta).value[0];
      REQUIRE(std::abs(got - expected) <= 1e-9 * (1.0 + std::abs(expected)));
    }
  }
}

TEST_CASE("taylor coefficients of a monomial") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return z[0] * z[0] * z[0]; });
  BoundarySamples samples =
      BoundarySamples::sample(f, Polydisc(CPoint::zero(2), {1.0, 1.0}), {16, 16});
  TaylorSeries series = taylor_coefficients(samples, 5);
  for (const auto& [beta, coef] : series.coefficients()) {
    const double expected = (beta == MultiIndex({3, 0})) ? 1.0 : 0.0;
    REQUIRE(std::abs(coef[0] - expected) < 1e-13);
  }
}

TEST_CASE("taylor coefficients of the exponential are reciprocal factorials") {
  auto oracle = oracles::exp_sum_oracle(2);
  BoundarySamples samples = BoundarySamples::sample(
      from_oracle(oracle), Polydisc(CPoint::zero(2), {1.0, 1.0}), {64, 64});
  TaylorSeries series = taylor_coefficients(samples, 8);
  for (const auto& [beta, coef] : series.coefficients()) {
    const double expected = 1.0 / beta.factorial();
    REQUIRE(std::abs(coef[0] - expected) <= 1e-12 * (1.0 + expected));
  }
}

TEST_CASE("taylor coefficients of the geometric series") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return 1.0 / (1.0 - z[0]); });
  BoundarySamples samples = BoundarySamples::sample(f, Polydisc(CPoint::zero(1), {0.5}), {64});
  TaylorSeries series = taylor_coefficients(samples, 8);
  for (const auto& [beta, coef] : series.coefficients())
    REQUIRE(std::abs(coef[0] - 1.0) < 1e-10);
}

TEST_CASE("aliasing margin is enforced per axis") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return z[0]; });
  BoundarySamples samples =
      BoundarySamples::sample(f, Polydisc(CPoint::zero(2), {1.0, 1.0}), {8, 16});
  REQUIRE_THROWS_WITH(taylor_coefficients(samples, 4), Catch::Matchers::ContainsSubstring("axis 0"));
}

TEST_CASE("cauchy bound reduces to the stated forms") {
  SECTION("constant, off-center first derivative") {
    auto f = IntegrandFn::scalar([](const CPoint&) { return Complex{1.0, 0.0}; });
    Polydisc disc(CPoint::zero(2), {2.0, 1.0});
    BoundarySamples samples = BoundarySamples::sample(f, disc, {16, 16});
    // at the center: b! M / rho^b = 1 * 1 / 2
    REQUIRE(cauchy_bound(samples, MultiIndex({1, 0}), disc.center(), "sup") ==
            Approx(0.5).epsilon(1e-12));
    auto r = cauchy_derivative(samples, disc.center(), MultiIndex({1, 0}));
    REQUIRE(r.value.seminorm("sup") <= 0.5);
  }
  SECTION("exponential at the center") {
    auto oracle = oracles::exp_sum_oracle(2);
    Polydisc disc(CPoint::zero(2), {1.0, 1.0});
    BoundarySamples samples = BoundarySamples::sample(from_oracle(oracle), disc, {64, 64});
    const double m = std::exp(2.0);  // max of e^{Re z1 + Re z2} on the unit torus
    REQUIRE(samples.boundary_max("sup") == Approx(m).epsilon(1e-12));
    const double bound = cauchy_bound(samples, MultiIndex({2, 2}), disc.center(), "sup");
    REQUIRE(bound == Approx(4.0 * m).epsilon(1e-12));
    const double actual =
        cauchy_derivative(samples, disc.center(), MultiIndex({2, 2})).value.seminorm("sup");
    REQUIRE(actual == Approx(1.0).epsilon(1e-10));
    REQUIRE(actual <= bound);
  }
  SECTION("order zero gives the maximum principle bound") {
    auto f = IntegrandFn::scalar([](const CPoint& z) { return std::exp(z[0]); });
    Polydisc disc(CPoint::zero(1), {1.0});
    BoundarySamples samples = BoundarySamples::sample(f, disc, {32});
    REQUIRE(cauchy_bound(samples, MultiIndex::zero(1), disc.center(), "sup") ==
            Approx(samples.boundary_max("sup")).epsilon(1e-14));
  }
}

TEST_CASE("DFT and per-order integral paths agree") {
  const Polydisc disc(CPoint::zero(2), {1.0, 1.0});
  const std::vector<oracles::SeparableOracle> oracle_set = {
      oracles::exp_sum_oracle(2), oracles::cubic_times_linear_oracle(),
      oracles::rational_oracle()};
  for (const auto& oracle : oracle_set) {
    BoundarySamples samples = BoundarySamples::sample(from_oracle(oracle), disc, {64, 64});
    TaylorSeries series = taylor_coefficients(samples, 8);
    for (const auto& [beta, coef] : series.coefficients()) {
      const Complex via_dft = coef[0] * beta.factorial();
      const Complex direct = cauchy_derivative(samples, disc.center(), beta).value[0];
      // identical trapezoidal sums up to op order; allow the b!-amplified
      // sub-ulp cancellation floor on top of the relative tolerance
      const double floor = 1e-16 * beta.factorial() * samples.boundary_max("sup");
      REQUIRE(std::abs(via_dft - direct) <= 1e-12 * (1.0 + std::abs(direct)) + floor);
    }
  }
}

TEST_CASE("mixed partials commute through nested one-variable integrals") {
  auto f = [](const CPoint& z) { return std::exp(z[0] * z[1]) + z[0] * z[0] * z[1]; };
  const CPoint at({Complex{0.2, 0.1}, Complex{-0.1, 0.3}});
  auto d1_then_d2 = [&](const CPoint& p) {
    auto inner = [&](const CPoint& q) { return slice_derivative(f, q, 0, 0.5, 64); };
    return slice_derivative(inner, p, 1, 0.5, 64);
  };
  auto d2_then_d1 = [&](const CPoint& p) {
    auto inner = [&](const CPoint& q) { return slice_derivative(f, q, 1, 0.5, 64); };
    return slice_derivative(inner, p, 0, 0.5, 64);
  };
  const Complex a = d1_then_d2(at);
  const Complex b = d2_then_d1(at);
  REQUIRE(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a)));
}

TEST_CASE("bound dominance across random interior points and orders") {
  auto rng = rng_for("bound-dominance");
  const Polydisc disc(CPoint::zero(2), {1.0, 1.0});
  std::uniform_int_distribution<unsigned> e(0, 3);
  const std::vector<oracles::SeparableOracle> oracle_set = {
      oracles::exp_sum_oracle(2), oracles::cubic_times_linear_oracle(),
      oracles::rational_oracle()};
  for (const auto& oracle : oracle_set) {
    BoundarySamples samples = BoundarySamples::sample(from_oracle(oracle), disc, {64, 64});
    for (int rep = 0; rep < 12; ++rep) {
      const CPoint zeta = random_interior(rng, disc, 0.6);
      MultiIndex beta({e(rng), e(rng)});
      const double actual = cauchy_derivative(samples, zeta, beta).value.seminorm("sup");
      const double bound = cauchy_bound(samples, beta, zeta, "sup");
      REQUIRE(actual <= bound + 1e-9);
    }
  }
}

TEST_CASE("probes commute with the boundary integral") {
  auto space = SpaceDescriptor::coordinates(2);
  auto f = IntegrandFn::vector(space, [space](const CPoint& z) {
    return VectorValue(space, {std::exp(z[0]), z[0] * z[0]});
  });
  Polydisc disc(CPoint::zero(1), {1.0});
  BoundarySamples samples = BoundarySamples::sample(f, disc, {64});
  const CPoint zeta({Complex{0.3, -0.2}});
  const MultiIndex beta({2});
  auto whole = cauchy_derivative(samples, zeta, beta).value;
  for (const auto& probe : Functional::coordinate_probes(space)) {
    auto scalar = IntegrandFn::scalar([&](const CPoint& z) { return probe.apply(f(z)); });
    BoundarySamples ssc = BoundarySamples::sample(scalar, disc, {64});
    const Complex separate = cauchy_derivative(ssc, zeta, beta).value[0];
    REQUIRE(std::abs(probe.apply(whole) - separate) <= 1e-13 * (1.0 + std::abs(separate)));
  }
}

TEST_CASE("interior compact sets obey the seminorm equivalence constants") {
  // sup over K of p(d^b f) <= C_{K,b} max over the boundary of K' of p(f),
  // with C from the distance-corrected bound and K at half the radii of K'.
  auto oracle = oracles::exp_sum_oracle(2);
  Polydisc outer(CPoint::zero(2), {1.0, 1.0});
  BoundarySamples samples = BoundarySamples::sample(from_oracle(oracle), outer, {64, 64});
  auto rng = rng_for("weierstrass");
  for (auto beta : {MultiIndex({1, 0}), MultiIndex({2, 1}), MultiIndex({0, 3})}) {
    double c_const = beta.factorial();
    for (std::size_t j = 0; j < 2; ++j) {
      c_const *= outer.radii()[j];
      const double delta = 0.5 * outer.radii()[j];
      for (unsigned i = 0; i < beta[j] + 1; ++i) c_const /= delta;
    }
    for (int rep = 0; rep < 8; ++rep) {
      const CPoint zeta = random_interior(rng, outer, 0.5);
      const double lhs = cauchy_derivative(samples, zeta, beta).value.seminorm("sup");
      REQUIRE(lhs <= c_const * samples.boundary_max("sup") + 1e-9);
    }
  }
}

TEST_CASE("cauchy_derivative rejects exterior points and warns near the boundary") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return std::exp(z[0]); });
  Polydisc disc(CPoint::zero(1), {1.0});
  BoundarySamples samples = BoundarySamples::sample(f, disc, {32});
  REQUIRE_THROWS_AS(cauchy_derivative(samples, CPoint({Complex{1.0, 0}}), MultiIndex({0})),
                    DomainError);
  REQUIRE_THROWS_AS(cauchy_derivative(samples, CPoint({Complex{1.5, 0}}), MultiIndex({0})),
                    DomainError);
  auto warned = cauchy_derivative(samples, CPoint({Complex{0.95, 0}}), MultiIndex({0}));
  REQUIRE(warned.margin_warning);
}

TEST_CASE("BoundarySamples validates the grid shape") {
  auto space = SpaceDescriptor::scalar();
  Polydisc disc(CPoint::zero(1), {1.0});
  std::vector<VectorValue> wrong(3, VectorValue::zero(space));
  REQUIRE_THROWS_AS(BoundarySamples(disc, {4}, wrong), DomainError);
}
