#include <catch2/catch_amalgamated.hpp>

#include <polydisc/quadrature.hpp>

#include <random>

using namespace polydisc;
using Catch::Approx;

namespace {

std::mt19937_64 rng_for(const char* tag) {
  std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
  return std::mt19937_64(seq);
}

double close(Complex a, Complex b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("residue integral on the unit circle") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return 1.0 / (z[0] - 0.3); });
  VectorValue v = integrate_curve(f, CurveC1::unit_circle(), {64});
  REQUIRE(close(v[0], Complex{0.0, kTwoPi}) < 1e-12);
}

TEST_CASE("closed-curve integral of an entire function vanishes") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return z[0] * z[0]; });
  VectorValue v = integrate_curve(f, CurveC1::unit_circle(), {32});
  REQUIRE(std::abs(v[0]) < 1e-13);
}

TEST_CASE("product of residues on the unit torus") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return 1.0 / (z[0] * z[1]); });
  CurveC1 torus({CurveAxis::circle({0, 0}, 1.0), CurveAxis::circle({0, 0}, 1.0)});
  VectorValue v = integrate_curve(f, torus, {32, 32});

  // cross-check: the two 1-D residue integrals computed independently
  auto f1 = IntegrandFn::scalar([](const CPoint& z) { return 1.0 / z[0]; });
  Complex one_dim = integrate_curve(f1, CurveC1::unit_circle(), {32})[0];
  REQUIRE(close(v[0], one_dim * one_dim) < 1e-11);
  REQUIRE(close(v[0], Complex{0.0, kTwoPi} * Complex{0.0, kTwoPi}) < 1e-11);
}

TEST_CASE("rectangle integration agrees across orders") {
  auto space = SpaceDescriptor::scalar();
  SECTION("x1*x2 over the unit square") {
    auto f = [space](double x, double y) { return VectorValue(space, {Complex{x * y, 0}}); };
    for (RectOrder order : {RectOrder::Tensor, RectOrder::XThenY, RectOrder::YThenX}) {
      VectorValue v = integrate_rectangle(f, space, 0, 1, 0, 1, order);
      REQUIRE(std::abs(v[0] - Complex{0.25, 0}) < 1e-12);
    }
  }
  SECTION("constant vector integrand is exact") {
    auto vspace = SpaceDescriptor::coordinates(2);
    const VectorValue c(vspace, {Complex{1.5, -0.5}, Complex{0, 2}});
    auto f = [&](double, double) { return c; };
    VectorValue v = integrate_rectangle(f, vspace, 0, 2, 0, 3, RectOrder::Tensor);
    REQUIRE(close(v[0], 6.0 * c[0]) < 1e-13 * (1.0 + std::abs(6.0 * c[0])));
    REQUIRE(close(v[1], 6.0 * c[1]) < 1e-13 * (1.0 + std::abs(6.0 * c[1])));
  }
  SECTION("separable exponential") {
    auto f = [space](double x, double y) {
      return VectorValue(space, {Complex{std::exp(x + y), 0}});
    };
    const double expected = (std::exp(1.0) - 1.0) * (std::exp(1.0) - 1.0);
    for (RectOrder order : {RectOrder::Tensor, RectOrder::XThenY, RectOrder::YThenX}) {
      VectorValue v = integrate_rectangle(f, space, 0, 1, 0, 1, order);
      REQUIRE(std::abs(v[0] - Complex{expected, 0}) < 1e-10);
    }
  }
}

TEST_CASE("fundamental theorem residuals") {
  SECTION("polynomial primitive on a segment") {
    auto f = IntegrandFn::scalar([](const CPoint& z) { return 2.0 * z[0]; });
    auto F = IntegrandFn::scalar([](const CPoint& z) { return z[0] * z[0]; });
    REQUIRE(ftc_check(f, F, CurveC1::segment({0, 0}, {1, 1})) <= 1e-12);
  }
  SECTION("exponential on a quarter circle") {
    auto f = IntegrandFn::scalar([](const CPoint& z) { return std::exp(z[0]); });
    CurveC1 quarter({CurveAxis::arc({0, 0}, 1.0, 0.0, kPi / 2)});
    REQUIRE(ftc_check(f, f, quarter) <= 1e-11);
  }
  SECTION("principal logarithm on the right half circle") {
    auto f = IntegrandFn::scalar([](const CPoint& z) { return 1.0 / z[0]; });
    auto F = IntegrandFn::scalar([](const CPoint& z) { return std::log(z[0]); });
    CurveC1 half({CurveAxis::arc({0, 0}, 1.0, -kPi / 2, kPi / 2)});
    REQUIRE(ftc_check(f, F, half) <= 1e-11);
    // endpoint difference is log(i) - log(-i) = i*pi
    VectorValue v = integrate_curve(f, half);
    REQUIRE(close(v[0], Complex{0.0, kPi}) < 1e-11);
  }
}

TEST_CASE("differentiation under the integral sign") {
  auto space = SpaceDescriptor::scalar();
  SECTION("entire integrand at lambda = 0") {
    ParametricIntegrand f{
        [space](const CPoint& z, const CPoint& lambda) {
          return VectorValue(space, {std::exp(z[0] * lambda[0])});
        },
        space,
        {}};
    VectorValue v = differentiate_parametric_integral(f, CurveC1::unit_circle(),
                                                      CPoint::zero(1), 0, {64});
    REQUIRE(std::abs(v[0]) < 1e-11);  // int z dz = 0 over a closed curve
  }
  SECTION("Cauchy kernel: derivative integrand has a primitive") {
    ParametricIntegrand f{
        [space](const CPoint& z, const CPoint& lambda) {
          return VectorValue(space, {1.0 / (z[0] - lambda[0])});
        },
        space,
        [space](const CPoint& z, const CPoint& lambda) {
          return VectorValue(space, {1.0 / ((z[0] - lambda[0]) * (z[0] - lambda[0]))});
        }};
    VectorValue v = differentiate_parametric_integral(f, CurveC1::unit_circle(),
                                                      CPoint({Complex{0.2, 0}}), 0, {64});
    REQUIRE(std::abs(v[0]) < 1e-11);
  }
  SECTION("linear parameter dependence") {
    ParametricIntegrand f{
        [space](const CPoint& z, const CPoint& lambda) {
          return VectorValue(space, {lambda[0] / (z[0] - 0.5)});
        },
        space,
        {}};
    VectorValue v = differentiate_parametric_integral(f, CurveC1::unit_circle(),
                                                      CPoint({Complex{0.7, 0.1}}), 0, {64});
    REQUIRE(close(v[0], Complex{0.0, kTwoPi}) < 1e-10);
  }
  SECTION("step underflow for tiny nonzero parameters") {
    ParametricIntegrand f{
        [space](const CPoint& z, const CPoint& lambda) {
          return VectorValue(space, {lambda[0] * z[0]});
        },
        space,
        {}};
    REQUIRE_THROWS_AS(differentiate_parametric_integral(f, CurveC1::unit_circle(),
                                                        CPoint({Complex{1e-9, 0}}), 0, {64}),
                      DomainError);
  }
}

TEST_CASE("linearity of the curve integral") {
  auto rng = rng_for("quad-linearity");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    const Complex c2{u(rng), u(rng)}, c3{u(rng), u(rng)};
    const Complex lambda{u(rng), u(rng)};
    auto f = IntegrandFn::scalar([c2](const CPoint& z) { return c2 * z[0] * z[0] + 1.0; });
    auto g = IntegrandFn::scalar([c3](const CPoint& z) { return c3 * z[0] * z[0] * z[0] - z[0]; });
    auto combo = IntegrandFn::scalar([&](const CPoint& z) {
      return (c2 * z[0] * z[0] + 1.0) + lambda * (c3 * z[0] * z[0] * z[0] - z[0]);
    });
    CurveC1 gamma = CurveC1::segment({0, 0}, {1, 2});
    Complex lhs = integrate_curve(combo, gamma)[0];
    Complex rhs = integrate_curve(f, gamma)[0] + lambda * integrate_curve(g, gamma)[0];
    REQUIRE(close(lhs, rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("coordinate probes commute with integration") {
  auto space = SpaceDescriptor::coordinates(3);
  auto f = IntegrandFn::vector(space, [space](const CPoint& z) {
    return VectorValue(space, {z[0], z[0] * z[0], std::exp(z[0])});
  });
  CurveC1 gamma({CurveAxis::arc({0.2, 0.1}, 0.8, 0.2, 2.5)});
  VectorValue whole = integrate_curve(f, gamma);
  for (const auto& probe : Functional::coordinate_probes(space)) {
    auto scalarized = IntegrandFn::scalar(
        [&](const CPoint& z) { return probe.apply(f(z)); });
    Complex separate = integrate_curve(scalarized, gamma)[0];
    REQUIRE(close(probe.apply(whole), separate) <= 1e-13 * (1.0 + std::abs(separate)));
  }
}

TEST_CASE("curve integral is bounded by length times boundary max") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return std::exp(z[0]) / (z[0] - 2.0); });
  CurveC1 gamma = CurveC1::unit_circle();
  VectorValue v = integrate_curve(f, gamma, {128});
  double sup = 0.0;
  for (int j = 0; j < 512; ++j) {
    const CPoint z({std::exp(Complex{0.0, kTwoPi * j / 512.0})});
    sup = std::max(sup, std::abs(f(z)[0]));
  }
  REQUIRE(std::abs(v[0]) <= gamma.length() * sup * (1.0 + 1e-12));
}

TEST_CASE("spectral convergence of the periodic trapezoidal rule") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return 1.0 / (z[0] - 0.3); });
  const Complex exact{0.0, kTwoPi};
  auto err = [&](int n) {
    return close(integrate_curve(f, CurveC1::unit_circle(), {n})[0], exact);
  };
  REQUIRE(err(64) <= 1e-10);
  REQUIRE(err(64) <= err(16));
  REQUIRE(err(16) < err(8));
}

TEST_CASE("evaluation failure names the node") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return z[0]; },
                               [](const CPoint& z) { return z[0].real() < 0.5; });
  try {
    integrate_curve(f, CurveC1::unit_circle(), {16});
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& e) {
    REQUIRE(std::string(e.what()).find("node") != std::string::npos);
  }
}

TEST_CASE("node budget is enforced") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return z[0]; });
  CurveC1 torus({CurveAxis::circle({0, 0}, 1.0), CurveAxis::circle({0, 0}, 1.0)});
  REQUIRE_THROWS_AS(integrate_curve(f, torus, {4096, 4096}, 1 << 20), ResourceError);
}

TEST_CASE("degenerate curve integrates to zero with a warning") {
  auto f = IntegrandFn::scalar([](const CPoint& z) { return std::exp(z[0]); });
  CurveC1 gamma = CurveC1::segment({1, 1}, {1, 1});
  bool warn = false;
  VectorValue v = integrate_curve(f, gamma, {}, kDefaultGridCap, &warn);
  REQUIRE(warn);
  REQUIRE(v[0] == Complex{0, 0});
}

TEST_CASE("Fubini cross-order agreement on smooth integrands") {
  auto space = SpaceDescriptor::scalar();
  auto rng = rng_for("fubini-cross");
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<std::function<double(double, double)>> fs = {
      [](double x, double y) { return x * y; },
      [](double x, double y) { return std::exp(x + y); },
      [](double x, double y) { return std::cos(x) * std::sin(y); },
      [](double x, double y) { return 1.0 / (1.0 + x * x + y * y); },
      [](double x, double y) { return x * x - y * y * y; },
  };
  for (const auto& fn : fs) {
    double a = u(rng), b = a + std::abs(u(rng)) + 0.1;
    double c = u(rng), d = c + std::abs(u(rng)) + 0.1;
    auto f = [&](double x, double y) { return VectorValue(space, {Complex{fn(x, y), 0}}); };
    Complex tensor = integrate_rectangle(f, space, a, b, c, d, RectOrder::Tensor)[0];
    Complex xy = integrate_rectangle(f, space, a, b, c, d, RectOrder::XThenY)[0];
    Complex yx = integrate_rectangle(f, space, a, b, c, d, RectOrder::YThenX)[0];
    const double tol = 1e-10 * (1.0 + std::abs(tensor));
    REQUIRE(close(tensor, xy) <= tol);
    REQUIRE(close(tensor, yx) <= tol);
    REQUIRE(close(xy, yx) <= tol);
  }
}
