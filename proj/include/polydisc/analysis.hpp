/**
 * @file analysis.hpp
 * @brief Applied machinery on top of the boundary-integral engine:
 *        holomorphic extension across thin algebraic sets, identity
 *        certification by coefficient comparison, and polynomial
 *        approximation in the algebra of functions continuous on a closed
 *        polydisc and holomorphic inside.
 */
#pragma once

#include <optional>

#include "cauchy.hpp"
#include "expr.hpp"
#include "holomorphy.hpp"

namespace polydisc {

/// Raised when no admissible boundary placement exists for an extension.
class ExtensionError : public Error {
public:
  using Error::Error;
};

/// Raised when the approximation degree cap is exhausted.
class DegreeCapError : public ResourceError {
public:
  using ResourceError::ResourceError;
};

/**
 * A thin set given as the zero locus of a nonzero polynomial expression p in
 * z1..zd; points with |p(z)| <= tau count as on the set. Identically-zero
 * expressions are rejected by probing deterministic sample points.
 */
class ThinSetSpec {
public:
  explicit ThinSetSpec(expr::Expr polynomial, double tau = 0.0)
      : poly_(std::move(polynomial)), tau_(tau) {
    Polydisc probe_region(CPoint::zero(poly_.dim()), std::vector<double>(poly_.dim(), 1.0));
    double scale = 0.0;
    for (const auto& z : default_interior_points(probe_region, 8, 0.9))
      scale = std::max(scale, std::abs(poly_.evaluate_scalar(z)));
    if (scale < 1e-14)
      throw DomainError("ThinSetSpec: defining polynomial is (numerically) identically zero");
    if (tau_ == 0.0) tau_ = 1e-8 * (1.0 + scale);
  }

  const expr::Expr& polynomial() const { return poly_; }
  double tau() const { return tau_; }
  std::size_t dim() const { return poly_.dim(); }

  bool excludes(const CPoint& z) const {
    return std::abs(poly_.evaluate_scalar(z)) <= tau_;
  }

private:
  expr::Expr poly_;
  double tau_;
};

/**
 * Holomorphic extension across a thin set via the order-zero boundary
 * integral. The first search disc whose distinguished-boundary grid clears
 * the thin set (shrinking radii by up to 5% in 8 steps when a grid point
 * lands on it) carries the integral; the caller asserts f is bounded on each
 * search disc minus the set.
 */
inline VectorValue riemann_extend(const IntegrandFn& f, const ThinSetSpec& thin,
                                  const CPoint& target, const std::vector<Polydisc>& search_discs,
                                  int nodes_per_axis = kDefaultCircleNodes) {
  if (search_discs.empty()) throw DomainError("riemann_extend: no search discs");
  bool target_covered = false;
  std::vector<std::string> blocked;

  for (std::size_t di = 0; di < search_discs.size(); ++di) {
    const Polydisc& disc = search_discs[di];
    if (!disc.contains(target)) continue;
    target_covered = true;
    for (int step = 0; step <= 8; ++step) {
      const double factor = 1.0 - 0.05 * static_cast<double>(step) / 8.0;
      const Polydisc scaled = disc.scaled(factor);
      if (!scaled.contains(target)) continue;
      BoundaryGrid grid = boundary_grid(scaled, std::vector<int>(disc.dim(), nodes_per_axis));
      bool clear = true;
      for (std::size_t flat = 0; flat < grid.size() && clear; ++flat)
        clear = !thin.excludes(grid.point(flat));
      if (!clear) continue;
      BoundarySamples samples =
          BoundarySamples::sample(f, scaled, std::vector<int>(disc.dim(), nodes_per_axis));
      return cauchy_derivative(samples, target, MultiIndex::zero(disc.dim())).value;
    }
    blocked.push_back("disc #" + std::to_string(di) + " centred at " +
                      disc.center().to_string());
  }
  if (!target_covered)
    throw DomainError("riemann_extend: target " + target.to_string() +
                      " lies outside every search disc");
  std::string msg = "riemann_extend: no admissible boundary after radius perturbation;";
  for (const auto& b : blocked) msg += " " + b;
  throw ExtensionError(msg);
}

struct IdentityResult {
  bool equal_on_disc = false;
  double max_coeff_gap = 0.0;
  std::optional<MultiIndex> witness;  // first offending index in graded-lex order
};

/**
 * Certifies f = g on the disc by expanding f - g at the center: all
 * derivatives vanishing at one point of a connected domain forces the
 * functions to agree everywhere on it, so coefficients through degree n all
 * below tol certify equality at this resolution, and any coefficient above
 * tol witnesses a genuine difference.
 */
inline IdentityResult identity_certify(const IntegrandFn& f, const IntegrandFn& g,
                                       const Polydisc& disc, unsigned degree, double tol,
                                       int nodes_per_axis = 0) {
  if (degree < 1) throw DomainError("identity_certify: degree must be >= 1");
  if (nodes_per_axis == 0)
    nodes_per_axis = std::max(64, 2 * (static_cast<int>(degree) + 2));
  if (nodes_per_axis % 2 != 0) ++nodes_per_axis;

  const std::vector<int> nodes(disc.dim(), nodes_per_axis);
  BoundarySamples fs = BoundarySamples::sample(f, disc, nodes);
  BoundarySamples gs = BoundarySamples::sample(g, disc, nodes);
  std::vector<VectorValue> diff;
  diff.reserve(fs.values().size());
  for (std::size_t i = 0; i < fs.values().size(); ++i)
    diff.push_back(fs.values()[i] - gs.values()[i]);
  BoundarySamples ds(disc, nodes, std::move(diff));
  TaylorSeries series = taylor_coefficients(ds, degree);

  IdentityResult result;
  result.equal_on_disc = true;
  for (const auto& [beta, coef] : series.coefficients()) {
    const double gap = coef.max_seminorm();
    result.max_coeff_gap = std::max(result.max_coeff_gap, gap);
    if (gap > tol && result.equal_on_disc) {
      result.equal_on_disc = false;
      result.witness = beta;
    }
  }
  return result;
}

struct ApproxResult {
  TaylorSeries polynomial;
  double certified_error = 0.0;
  double r_used = 0.0;
  unsigned degree_used = 0;
  double delta_used = 0.0;
};

struct ApproxOptions {
  unsigned degree_cap = 64;
  int continuity_points_per_axis = 32;  // closed-disc modulus grid, per axis
  int validation_angles = 33;           // distinguished-boundary validation grid, per axis
  double safety = 0.5;                  // shrink on the sampled modulus
};

namespace detail {

/// Tensor grid over the closed polydisc: per axis, radii at fractions
/// {1/n_r, ..., 1} and uniform angles, n_r * n_a = points_per_axis.
inline std::vector<CPoint> closed_disc_grid(const Polydisc& disc, int points_per_axis) {
  const int n_r = 4;
  const int n_a = std::max(1, points_per_axis / n_r);
  std::vector<std::vector<Complex>> axis_samples(disc.dim());
  for (std::size_t j = 0; j < disc.dim(); ++j) {
    for (int ir = 1; ir <= n_r; ++ir)
      for (int ia = 0; ia < n_a; ++ia) {
        const double rho = disc.radii()[j] * ir / n_r;
        const double th = kTwoPi * ia / n_a;
        axis_samples[j].push_back(disc.center()[j] + rho * std::exp(Complex{0.0, th}));
      }
  }
  std::vector<CPoint> grid;
  std::vector<std::size_t> idx(disc.dim(), 0);
  while (true) {
    std::vector<Complex> c(disc.dim());
    for (std::size_t j = 0; j < disc.dim(); ++j) c[j] = axis_samples[j][idx[j]];
    grid.push_back(CPoint(std::move(c)));
    std::size_t j = disc.dim();
    while (j-- > 0) {
      if (++idx[j] < axis_samples[j].size()) break;
      idx[j] = 0;
      if (j == 0) return grid;
    }
  }
}

/// Largest sampled step with all function gaps below eps (then shrunk by the
/// safety factor): a conservative modulus-of-continuity estimate.
inline double estimate_modulus(const IntegrandFn& f, const Polydisc& disc,
                               const std::vector<CPoint>& grid, double eps,
                               const Seminorm& p, double safety) {
  double max_radius = 0.0;
  for (double r : disc.radii()) max_radius = std::max(max_radius, r);
  for (int level = 1; level <= 48; ++level) {
    const double h = 0.5 * max_radius * std::pow(2.0, 1 - level);
    double worst_gap = 0.0;
    for (const auto& u : grid) {
      const VectorValue fu = f(u);
      for (std::size_t j = 0; j < disc.dim(); ++j) {
        for (Complex dir : {Complex{1, 0}, Complex{-1, 0}, Complex{0, 1}, Complex{0, -1}}) {
          const Complex moved = u[j] + h * dir;
          if (std::abs(moved - disc.center()[j]) > disc.radii()[j]) continue;
          const double gap = (f(u.with_coord(j, moved)) - fu).seminorm(p);
          worst_gap = std::max(worst_gap, gap);
        }
      }
    }
    if (worst_gap < eps) return safety * h;
  }
  throw DomainError(
      "approx_polynomial: modulus-of-continuity estimate failed to reach the target "
      "oscillation at grid resolution");
}

}  // namespace detail

/**
 * Polynomial approximation of f, continuous on the closed disc and
 * holomorphic inside, to uniform accuracy 2*eps in the given seminorm.
 *
 * The dilation g(w) = f(z + r (w - z)) with r chosen from the modulus of
 * continuity keeps |f - g| <= eps on the closed disc while making g
 * holomorphic past the closed boundary; the Taylor truncation of g on the
 * original radii is then cut at the smallest degree whose measured
 * coefficient tail stays below eps. The certified error is the sampled
 * maximum of f - T_N over the distinguished boundary, where the seminorm of
 * the holomorphic difference attains its maximum over the closed disc.
 */
inline ApproxResult approx_polynomial(const IntegrandFn& f, const Polydisc& disc, double eps,
                                      const std::string& seminorm_name,
                                      const ApproxOptions& options = {}) {
  if (!(eps > 0.0)) throw DomainError("approx_polynomial: eps must be > 0");
  const std::size_t d = disc.dim();
  const Seminorm& p = f.space->seminorm_named(seminorm_name);

  // (1) modulus of continuity on a closed-disc grid
  const auto grid = detail::closed_disc_grid(disc, options.continuity_points_per_axis);
  const double delta = detail::estimate_modulus(f, disc, grid, eps, p, options.safety);

  // (2) dilation factor: midpoint of the admissible interval
  double geometry = 0.0;
  for (std::size_t j = 0; j < d; ++j)
    geometry = std::max(geometry, disc.radii()[j] + std::abs(disc.center()[j]));
  const double lower = 1.0 - delta / (std::sqrt(static_cast<double>(d)) * geometry);
  const double r = 0.5 * (std::max(lower, 0.0) + 1.0);

  // (3) Taylor series of the dilated function on the original radii
  const CPoint center = disc.center();
  auto dilated = IntegrandFn::vector(
      f.space,
      [&f, center, r](const CPoint& w) {
        std::vector<Complex> arg(w.dim());
        for (std::size_t j = 0; j < w.dim(); ++j)
          arg[j] = center[j] + r * (w[j] - center[j]);
        return f(CPoint(std::move(arg)));
      },
      {}, Smoothness::AnalyticOnAnnulus);
  int nodes = 2 * (static_cast<int>(options.degree_cap) + 2);
  BoundarySamples samples =
      BoundarySamples::sample(dilated, disc, std::vector<int>(d, nodes));
  TaylorSeries series = taylor_coefficients(samples, options.degree_cap);

  // per-level measured tail masses sum_{|b| = l} p(b_b) * R^b
  std::vector<double> level_mass(options.degree_cap + 1, 0.0);
  for (const auto& [beta, coef] : series.coefficients()) {
    double scale = 1.0;
    for (std::size_t j = 0; j < d; ++j)
      for (unsigned i = 0; i < beta[j]; ++i) scale *= disc.radii()[j];
    level_mass[beta.order()] += coef.seminorm(p) * scale;
  }
  std::optional<unsigned> chosen;
  double tail = 0.0;
  for (unsigned n = options.degree_cap; n-- > 0;) {
    tail += level_mass[n + 1];
    if (tail > eps) {
      if (n + 1 < options.degree_cap) chosen = n + 1;
      break;
    }
    chosen = n;
  }
  if (!chosen)
    throw DegreeCapError("approx_polynomial: coefficient tail stays above eps up to the degree "
                         "cap of " + std::to_string(options.degree_cap));
  const unsigned degree_used = *chosen;
  TaylorSeries polynomial = series.truncated(degree_used);

  // (4) certified error on the distinguished-boundary validation grid
  const int angles = options.validation_angles;
  double certified = 0.0;
  std::vector<int> vidx(d, 0);
  while (true) {
    std::vector<Complex> c(d);
    for (std::size_t j = 0; j < d; ++j)
      c[j] = disc.center()[j] +
             disc.radii()[j] * std::exp(Complex{0.0, kTwoPi * vidx[j] / angles});
    const CPoint w(std::move(c));
    const VectorValue gap = f(w) - polynomial.evaluate_truncation(w, degree_used);
    certified = std::max(certified, gap.seminorm(p));
    std::size_t j = d;
    bool done = true;
    while (j-- > 0) {
      if (++vidx[j] < angles) {
        done = false;
        break;
      }
      vidx[j] = 0;
    }
    if (done) break;
  }
  return ApproxResult{std::move(polynomial), certified, r, degree_used, delta};
}

}  // namespace polydisc
