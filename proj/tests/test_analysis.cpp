#include <catch2/catch_amalgamated.hpp>

#include <polydisc/analysis.hpp>

using namespace polydisc;
using expr::Expr;
using Catch::Approx;

namespace {

IntegrandFn scalar_fn(std::function<Complex(const CPoint&)> f,
                      std::function<bool(const CPoint&)> domain = {}) {
  return IntegrandFn::scalar(std::move(f), std::move(domain));
}

}  // namespace

TEST_CASE("thin set specification") {
  REQUIRE_THROWS_AS(ThinSetSpec(Expr::parse("0", 2)), DomainError);
  REQUIRE_THROWS_AS(ThinSetSpec(Expr::parse("z1-z1", 2)), DomainError);
  ThinSetSpec diag(Expr::parse("z1-z2", 2));
  REQUIRE(diag.excludes(CPoint({Complex{0.3, 0.1}, Complex{0.3, 0.1}})));
  REQUIRE_FALSE(diag.excludes(CPoint({Complex{0.3, 0}, Complex{0.4, 0}})));
  REQUIRE(diag.tau() > 0.0);
}

TEST_CASE("removable singularity of sin(z1 z2)/(z1 z2)") {
  ThinSetSpec thin(Expr::parse("z1*z2", 2));
  auto f = scalar_fn([](const CPoint& z) { return std::sin(z[0] * z[1]) / (z[0] * z[1]); },
                     [&thin](const CPoint& z) { return !thin.excludes(z); });
  const CPoint target({Complex{0, 0}, Complex{0.5, 0}});
  // boundary circles avoid z1 = 0 and z2 = 0 because |center| != radius per axis
  std::vector<Polydisc> discs = {
      Polydisc(CPoint({Complex{0.1, 0}, Complex{0.5, 0}}), {0.35, 0.3})};
  VectorValue v = riemann_extend(f, thin, target, discs);
  REQUIRE(std::abs(v[0] - Complex{1.0, 0.0}) < 1e-10);
}

TEST_CASE("removable singularity of (z1^2 - z2^2)/(z1 - z2)") {
  ThinSetSpec thin(Expr::parse("z1-z2", 2));
  auto f = scalar_fn(
      [](const CPoint& z) { return (z[0] * z[0] - z[1] * z[1]) / (z[0] - z[1]); },
      [&thin](const CPoint& z) { return !thin.excludes(z); });
  const CPoint target({Complex{0.3, 0}, Complex{0.3, 0}});
  std::vector<Polydisc> discs = {
      Polydisc(CPoint({Complex{0.5, 0}, Complex{0.3, 0}}), {0.5, 0.4})};
  VectorValue v = riemann_extend(f, thin, target, discs);
  REQUIRE(std::abs(v[0] - Complex{0.6, 0.0}) < 1e-10);
}

TEST_CASE("extension of a regular function matches direct evaluation") {
  ThinSetSpec thin(Expr::parse("z1-2", 1));  // zero set far away
  auto f = scalar_fn([](const CPoint& z) { return std::exp(z[0]) * std::cos(z[0]); });
  std::vector<Polydisc> discs = {Polydisc(CPoint::zero(1), {0.8})};
  const CPoint target({Complex{0.2, -0.3}});
  VectorValue v = riemann_extend(f, thin, target, discs);
  REQUIRE(std::abs(v[0] - f(target)[0]) < 1e-11);
}

TEST_CASE("extension error paths") {
  ThinSetSpec thin(Expr::parse("z1", 1));
  auto f = scalar_fn([](const CPoint& z) { return std::sin(z[0]) / z[0]; },
                     [&thin](const CPoint& z) { return !thin.excludes(z); });
  SECTION("target outside all discs") {
    std::vector<Polydisc> discs = {Polydisc(CPoint({Complex{5, 0}}), {0.5})};
    REQUIRE_THROWS_AS(riemann_extend(f, thin, CPoint::zero(1), discs), DomainError);
  }
  SECTION("no admissible boundary: every perturbed circle crosses the zero set") {
    // center 0: each circle |z| = r passes through no zero of z1... use the
    // thin set |z1| - style blocker instead: p(z) = z1 - c with c on every
    // perturbed radius is impossible, so block with a ring of zeros:
    // p(z) = z1^2 - r^2 has zeros on +-r; a circle centred at 0 with radius r
    // hits them. All 9 perturbation steps shrink within 5%, so zeros at
    // every radius in [0.95 r0, r0] block everything.
    // Simplest honest blocker: thin set z1 - 0 and a disc centred at 0,
    // where every circle contains points at angle with value ... does not
    // vanish. Instead verify the blocked-disc listing with an explicit
    // always-on-set tau.
    ThinSetSpec everywhere(Expr::parse("1e-12*z1", 1), 1e3);
    std::vector<Polydisc> discs = {Polydisc(CPoint::zero(1), {0.5})};
    try {
      riemann_extend(f, everywhere, CPoint::zero(1), discs);
      FAIL("expected ExtensionError");
    } catch (const ExtensionError& e) {
      REQUIRE(std::string(e.what()).find("disc #0") != std::string::npos);
    }
  }
}

TEST_CASE("radius perturbation finds a clear boundary") {
  // The first axis circle of the unperturbed disc passes exactly through a
  // zero of z2 - 0.25 at theta = pi; one shrink step clears it.
  ThinSetSpec thin(Expr::parse("z2", 2));
  auto f = scalar_fn([](const CPoint& z) { return std::sin(z[0] * z[1]) / (z[0] * z[1]); },
                     [&thin](const CPoint& z) { return !thin.excludes(z); });
  std::vector<Polydisc> discs = {
      Polydisc(CPoint({Complex{0.4, 0}, Complex{0, 0}}), {0.3, 0.25})};
  const CPoint target({Complex{0.4, 0}, Complex{0, 0}});
  VectorValue v = riemann_extend(f, thin, target, discs);
  REQUIRE(std::abs(v[0] - Complex{1.0, 0.0}) < 1e-9);
}

TEST_CASE("extension agrees with f off the thin set") {
  ThinSetSpec thin(Expr::parse("z1-z2", 2));
  auto f = scalar_fn(
      [](const CPoint& z) { return (z[0] * z[0] - z[1] * z[1]) / (z[0] - z[1]); },
      [&thin](const CPoint& z) { return !thin.excludes(z); });
  std::vector<Polydisc> discs = {
      Polydisc(CPoint({Complex{0.2, 0}, Complex{-0.1, 0}}), {0.5, 0.5})};
  const CPoint target({Complex{0.25, 0.1}, Complex{-0.15, 0.05}});
  VectorValue v = riemann_extend(f, thin, target, discs);
  REQUIRE(std::abs(v[0] - f(target)[0]) < 1e-10);
}

TEST_CASE("extended data passes the negative spectrum check") {
  ThinSetSpec thin(Expr::parse("z1-z2", 2));
  auto raw = scalar_fn(
      [](const CPoint& z) { return (z[0] * z[0] - z[1] * z[1]) / (z[0] - z[1]); },
      [&thin](const CPoint& z) { return !thin.excludes(z); });
  // on the diagonal-crossing torus, fill excluded points via extension;
  // the search disc has distinct radii so its own boundary clears the
  // diagonal, and it is wide enough that the targets sit well inside
  std::vector<Polydisc> search = {
      Polydisc(CPoint({Complex{0.1, 0}, Complex{0.1, 0}}), {0.9, 0.7})};
  auto extended = scalar_fn([&](const CPoint& z) {
    if (thin.excludes(z)) return riemann_extend(raw, thin, z, search)[0];
    return raw(z)[0];
  });
  // equal radii and equal centers: the grid diagonal lies on the thin set
  Polydisc disc(CPoint({Complex{0.1, 0}, Complex{0.1, 0}}), {0.4, 0.4});
  auto report = negative_spectrum_check(BoundarySamples::sample(extended, disc, {16, 16}));
  REQUIRE(report.verdict == Verdict::Pass);
}

TEST_CASE("identity certification") {
  Polydisc disc(CPoint::zero(1), {1.0});
  SECTION("identical functions") {
    auto f = scalar_fn([](const CPoint& z) { return std::exp(z[0]) * z[0]; });
    auto result = identity_certify(f, f, disc, 10, 1e-10);
    REQUIRE(result.equal_on_disc);
    REQUIRE(result.max_coeff_gap <= 1e-13);
  }
  SECTION("exp against its degree-10 truncation") {
    auto f = scalar_fn([](const CPoint& z) { return std::exp(z[0]); });
    auto g = scalar_fn([](const CPoint& z) {
      // degree-10 Taylor polynomial of exp: terms z^0 / 0! through z^10 / 10!
      Complex sum{0, 0}, term{1, 0};
      for (int k = 0; k <= 10; ++k) {
        sum += term;
        term *= z[0] / static_cast<double>(k + 1);
      }
      return sum;
    });
    auto result = identity_certify(f, g, disc, 12, 1e-10);
    REQUIRE_FALSE(result.equal_on_disc);
    REQUIRE(result.witness.has_value());
    REQUIRE(*result.witness == MultiIndex({11}));
    const double expected = 1.0 / MultiIndex({11}).factorial();
    REQUIRE(result.max_coeff_gap == Approx(expected).margin(0.1 * expected));
  }
  SECTION("syntactically different, semantically equal") {
    Polydisc disc2(CPoint::zero(2), {1.0, 1.0});
    auto f = Expr::parse("z1*z2", 2).to_integrand();
    auto g = Expr::parse("z2*z1", 2).to_integrand();
    REQUIRE(identity_certify(f, g, disc2, 6, 1e-10).equal_on_disc);
  }
  SECTION("symmetry of the verdict") {
    auto f = scalar_fn([](const CPoint& z) { return std::exp(z[0]); });
    auto g = scalar_fn([](const CPoint& z) { return std::exp(z[0]) + 1e-4 * z[0]; });
    auto fg = identity_certify(f, g, disc, 8, 1e-6);
    auto gf = identity_certify(g, f, disc, 8, 1e-6);
    REQUIRE(fg.equal_on_disc == gf.equal_on_disc);
    REQUIRE(fg.max_coeff_gap == Approx(gf.max_coeff_gap).epsilon(1e-12));
  }
}

TEST_CASE("polynomial approximation of the exponential") {
  Polydisc disc(CPoint::zero(2), {1.0, 1.0});
  auto f = Expr::parse("exp(z1)", 2).to_integrand();
  auto result = approx_polynomial(f, disc, 1e-3, "sup");
  REQUIRE(result.certified_error <= 2e-3);
  REQUIRE(result.degree_used <= 10);
  REQUIRE(result.r_used > 0.99);
  REQUIRE(result.r_used < 1.0);
}

TEST_CASE("approximation error decreases with eps") {
  Polydisc disc(CPoint::zero(2), {1.0, 1.0});
  auto f = Expr::parse("exp(z1)", 2).to_integrand();
  const double e1 = approx_polynomial(f, disc, 1e-2, "sup").certified_error;
  const double e2 = approx_polynomial(f, disc, 1e-3, "sup").certified_error;
  REQUIRE(e1 <= 2e-2);
  REQUIRE(e2 <= 2e-3);
  REQUIRE(e2 <= e1 + 1e-12);
}

TEST_CASE("a polynomial input stays a polynomial of its own degree") {
  Polydisc disc(CPoint::zero(1), {1.0});
  auto f = Expr::parse("1 + 2*z1 - 0.5*z1^3", 1).to_integrand();
  auto result = approx_polynomial(f, disc, 1e-9, "sup", {});
  REQUIRE(result.degree_used <= 3);
  // the dilation changes coefficients by r^|b|; with eps this small the gap
  // is at quadrature-slack scale
  REQUIRE(result.certified_error <= 2e-9);
}

TEST_CASE("constant functions are approximation fixed points") {
  Polydisc disc(CPoint::zero(2), {1.0, 1.0});
  auto f = scalar_fn([](const CPoint&) { return Complex{2.0, -1.0}; });
  auto result = approx_polynomial(f, disc, 1e-4, "sup");
  REQUIRE(result.certified_error <= 1e-12);
  REQUIRE(result.degree_used == 0);
}

TEST_CASE("re-extraction of a returned polynomial reproduces its coefficients") {
  Polydisc disc(CPoint::zero(1), {1.0});
  auto f = Expr::parse("0.3 + z1^2 - 2*z1^4", 1).to_integrand();
  auto result = approx_polynomial(f, disc, 1e-6, "sup");
  auto poly_fn = scalar_fn([&result](const CPoint& z) {
    return result.polynomial.evaluate_truncation(z, result.degree_used)[0];
  });
  TaylorSeries re = taylor_coefficients(
      BoundarySamples::sample(poly_fn, disc, {64}), result.degree_used);
  for (const auto& [beta, coef] : result.polynomial.coefficients()) {
    const Complex again = (*re.coefficient(beta))[0];
    REQUIRE(std::abs(again - coef[0]) <= 1e-12 * (1.0 + std::abs(coef[0])));
  }
}
