/**
 * @file holomorphy.hpp
 * @brief Finite-resolution diagnostics for the equivalent characterisations
 *        of holomorphy: Cauchy-Riemann residuals from realified central
 *        differences, negative-frequency mass of boundary DFTs, per-axis
 *        slice checks, functional probing, and the relation between real and
 *        complex higher-order partial derivatives.
 *
 * Holomorphy can only be falsified at a point set, never verified; every
 * verdict here is "pass at resolution (N, h, tol)" with the resolution
 * recorded in the report.
 */
#pragma once

#include <optional>
#include <sstream>

#include "cauchy.hpp"

namespace polydisc {

inline constexpr double kFdResidualFloor = 1e-6;
inline constexpr double kSpectralTol = 1e-10;

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "inconclusive";
  }
}

struct DiagnosticReport {
  Verdict verdict = Verdict::Inconclusive;
  std::map<std::string, double> residuals;
  std::map<std::string, double> resolution;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;

  void fail_with(std::string witness) {
    verdict = Verdict::Fail;
    witnesses.push_back(std::move(witness));
  }
};

namespace detail {

/// Deterministic Halton sequence value, base b, index i (1-based).
inline double halton(std::size_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

inline constexpr unsigned kHaltonBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace detail

/// Low-discrepancy interior points of a polydisc at the given radial margin.
inline std::vector<CPoint> default_interior_points(const Polydisc& disc, std::size_t count = 8,
                                                   double margin = 0.6) {
  const std::size_t d = disc.dim();
  if (2 * d > std::size(detail::kHaltonBases))
    throw DomainError("default_interior_points: dimension too large for the base table");
  std::vector<CPoint> points;
  for (std::size_t i = 1; i <= count; ++i) {
    std::vector<Complex> c(d);
    for (std::size_t j = 0; j < d; ++j) {
      const double u = detail::halton(i, detail::kHaltonBases[2 * j]);
      const double v = detail::halton(i, detail::kHaltonBases[2 * j + 1]);
      c[j] = disc.center()[j] +
             margin * disc.radii()[j] * std::sqrt(u) * std::exp(Complex{0.0, kTwoPi * v});
    }
    points.push_back(CPoint(std::move(c)));
  }
  return points;
}

namespace detail {

/// Max over points, axes and the seminorm family of the Cauchy-Riemann
/// residual 1/2 (d/dx_j + i d/dy_j) f by central differences at step h.
inline std::pair<double, std::string> cr_residual_pass(const IntegrandFn& f,
                                                       const std::vector<CPoint>& grid,
                                                       double h) {
  double worst = 0.0;
  std::string witness;
  for (const auto& z : grid) {
    for (std::size_t j = 0; j < z.dim(); ++j) {
      const Complex zj = z[j];
      const VectorValue dx = (f(z.with_coord(j, zj + h)) - f(z.with_coord(j, zj - h))) *
                             Complex{1.0 / (2.0 * h), 0.0};
      const VectorValue dy =
          (f(z.with_coord(j, zj + Complex{0.0, h})) - f(z.with_coord(j, zj - Complex{0.0, h}))) *
          Complex{1.0 / (2.0 * h), 0.0};
      const VectorValue dbar = (dx + Complex{0.0, 1.0} * dy) * Complex{0.5, 0.0};
      const double r = dbar.max_seminorm();
      if (r > worst) {
        worst = r;
        witness = "point " + z.to_string() + " axis " + std::to_string(j);
      }
    }
  }
  return {worst, witness};
}

/// Two-step truncation fit: residuals decaying like C h^2 pass against
/// max(floor, 2 C_fit h^2); residuals that do not decay fail it.
inline std::pair<double, double> fd_threshold(double r1, double r2, double h, double floor_tol) {
  const double c_fit = std::max(0.0, (r1 - r2) / (0.75 * h * h));
  return {c_fit, std::max(floor_tol, 2.0 * c_fit * h * h)};
}

}  // namespace detail

/**
 * Cauchy-Riemann residual diagnostic. Every grid point needs its 2h-stencil
 * inside the integrand's domain. The residual threshold is the larger of the
 * absolute floor and a truncation fit from two step sizes, so holomorphic
 * functions pass in the O(h^2) regime while a genuinely nonzero d-bar term
 * fails regardless of step.
 */
inline DiagnosticReport cr_residual(const IntegrandFn& f, const std::vector<CPoint>& grid,
                                    double h, double floor_tol = kFdResidualFloor) {
  if (grid.empty()) throw DomainError("cr_residual: empty sample grid");
  if (!(h > 0.0)) throw DomainError("cr_residual: step must be > 0");
  auto [r1, witness1] = detail::cr_residual_pass(f, grid, h);
  auto [r2, witness2] = detail::cr_residual_pass(f, grid, h / 2.0);
  auto [c_fit, threshold] = detail::fd_threshold(r1, r2, h, floor_tol);

  DiagnosticReport report;
  report.residuals["cr_residual"] = r1;
  report.residuals["cr_residual_half_step"] = r2;
  report.resolution["h"] = h;
  report.resolution["fitted_C"] = c_fit;
  report.resolution["threshold"] = threshold;
  report.resolution["grid_points"] = static_cast<double>(grid.size());
  if (r1 <= threshold) {
    report.verdict = Verdict::Pass;
  } else {
    report.fail_with(witness1);
  }
  return report;
}

/**
 * Negative-frequency content of the boundary DFT. A function with a
 * power-series representation on the disc contributes only nonnegative
 * frequencies; mass above tol * (1 + M_p) at any frequency with a negative
 * component falsifies that representation at this resolution.
 */
inline DiagnosticReport negative_spectrum_check(const BoundarySamples& samples,
                                                double tol = kSpectralTol) {
  const std::vector<VectorValue> dft = full_dft(samples);
  const auto& nodes = samples.nodes();
  const auto& family = samples.space()->seminorms();

  DiagnosticReport report;
  report.resolution["tol"] = tol;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    report.resolution["nodes_axis" + std::to_string(k)] = nodes[k];

  std::map<std::string, double> worst_mass;
  for (const auto& p : family) worst_mass[p.name] = 0.0;
  double worst_ratio = 0.0;
  std::string witness;

  for (std::size_t flat = 0; flat < dft.size(); ++flat) {
    const auto idx = samples.grid().unflatten(flat);
    bool negative = false;
    for (std::size_t k = 0; k < idx.size(); ++k)
      negative = negative || signed_frequency(idx[k], nodes[k]) < 0;
    if (!negative) continue;
    for (const auto& p : family) {
      const double mass = dft[flat].seminorm(p);
      worst_mass[p.name] = std::max(worst_mass[p.name], mass);
      const double ratio = mass / (tol * (1.0 + samples.boundary_max(p.name)));
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        std::ostringstream os;
        os << "frequency (";
        for (std::size_t k = 0; k < idx.size(); ++k)
          os << (k ? "," : "") << signed_frequency(idx[k], nodes[k]);
        os << ") seminorm " << p.name << " magnitude " << mass;
        witness = os.str();
      }
    }
  }

  for (const auto& [name, mass] : worst_mass)
    report.residuals["neg_mass_" + name] = mass;
  if (worst_ratio > 1.0) {
    report.fail_with(witness);
  } else {
    report.verdict = Verdict::Pass;
  }
  return report;
}

/**
 * Per-axis slice diagnostic: for each base point z and axis j, the
 * one-variable function u -> f(z with z_j = u) is sampled on a circle of the
 * given radius and spectrally checked. Joint holomorphy rides on all slices
 * passing at all base points.
 */
inline DiagnosticReport separate_holomorphy_check(const IntegrandFn& f,
                                                  const std::vector<CPoint>& base_points,
                                                  const std::vector<double>& slice_radii,
                                                  int slice_nodes = kDefaultCircleNodes,
                                                  double tol = kSpectralTol) {
  if (base_points.empty()) throw DomainError("separate_holomorphy_check: no base points");
  const std::size_t d = base_points.front().dim();
  if (slice_radii.size() != d)
    throw DomainError("separate_holomorphy_check: slice radii dimension mismatch");

  DiagnosticReport report;
  report.verdict = Verdict::Pass;
  report.resolution["tol"] = tol;
  report.resolution["slice_nodes"] = slice_nodes;
  report.resolution["base_points"] = static_cast<double>(base_points.size());

  double worst = 0.0;
  for (std::size_t p = 0; p < base_points.size(); ++p) {
    const CPoint& z = base_points[p];
    for (std::size_t j = 0; j < d; ++j) {
      auto slice = IntegrandFn::vector(
          f.space, [&f, &z, j](const CPoint& u) { return f(z.with_coord(j, u[0])); });
      Polydisc disc(CPoint({z[j]}), {slice_radii[j]});
      BoundarySamples samples = BoundarySamples::sample(slice, disc, {slice_nodes});
      DiagnosticReport sub = negative_spectrum_check(samples, tol);
      for (const auto& [name, mass] : sub.residuals)
        worst = std::max(worst, mass);
      if (sub.verdict == Verdict::Fail) {
        report.fail_with("base point #" + std::to_string(p) + " axis " + std::to_string(j) +
                         ": " + sub.witnesses.front());
      }
    }
  }
  report.residuals["max_slice_neg_mass"] = worst;
  return report;
}

namespace detail {

/// Rank of the probe weight matrix over C by Gaussian elimination.
inline std::size_t probe_rank(const std::vector<Functional>& probes) {
  if (probes.empty()) return 0;
  const std::size_t cols = probes.front().weights().size();
  std::vector<std::vector<Complex>> rows;
  for (const auto& p : probes) rows.push_back(p.weights());
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    for (std::size_t r = rank + 1; r < rows.size(); ++r)
      if (std::abs(rows[r][c]) > std::abs(rows[pivot][c])) pivot = r;
    if (std::abs(rows[pivot][c]) < 1e-12) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const Complex factor = rows[r][c] / rows[rank][c];
      for (std::size_t cc = c; cc < cols; ++cc) rows[r][cc] -= factor * rows[rank][cc];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/**
 * Scalar spectral checks of e' o f for each supplied functional. With a
 * probe set spanning the coordinate dual the configuration instantiates the
 * determining-boundedness clause; otherwise the report flags that the
 * spanning hypothesis is not met and the verdict only covers what was
 * probed. A finite local-boundedness sweep over interior sample
 * neighbourhoods is always recorded.
 */
inline DiagnosticReport weak_holomorphy_probe(const IntegrandFn& f,
                                              const std::vector<Functional>& probes,
                                              const Polydisc& boundary,
                                              int nodes_per_axis = kDefaultCircleNodes,
                                              double tol = kSpectralTol) {
  if (probes.empty()) throw DomainError("weak_holomorphy_probe: empty probe list");
  BoundarySamples samples =
      BoundarySamples::sample(f, boundary, std::vector<int>(boundary.dim(), nodes_per_axis));

  DiagnosticReport report;
  report.verdict = Verdict::Pass;
  report.resolution["tol"] = tol;
  report.resolution["nodes_per_axis"] = nodes_per_axis;
  report.resolution["probes"] = static_cast<double>(probes.size());

  auto scalar_space = SpaceDescriptor::scalar();
  for (std::size_t i = 0; i < probes.size(); ++i) {
    std::vector<VectorValue> scalar_values;
    scalar_values.reserve(samples.values().size());
    for (const auto& v : samples.values())
      scalar_values.push_back(VectorValue(scalar_space, {probes[i].apply(v)}));
    BoundarySamples probed(samples.disc(), samples.nodes(), std::move(scalar_values));
    DiagnosticReport sub = negative_spectrum_check(probed, tol);
    report.residuals["probe" + std::to_string(i) + "_neg_mass"] =
        sub.residuals.at("neg_mass_sup");
    if (sub.verdict == Verdict::Fail)
      report.fail_with("probe #" + std::to_string(i) + ": " + sub.witnesses.front());
  }

  const std::size_t rank = detail::probe_rank(probes);
  const bool spanning = rank == f.space->entry_count();
  report.resolution["probe_rank"] = static_cast<double>(rank);

  // local-boundedness sweep over interior sample neighbourhoods
  bool bounded = true;
  const auto sweep_points = default_interior_points(boundary, 8);
  for (const auto& z : sweep_points) {
    for (std::size_t j = 0; j < z.dim() && bounded; ++j) {
      for (double eps : {0.0, 0.01, -0.01}) {
        const VectorValue v = f(z.with_coord(j, z[j] + eps * boundary.radii()[j]));
        if (!v.finite() || !std::isfinite(v.max_seminorm())) {
          bounded = false;
          break;
        }
      }
    }
  }
  report.resolution["local_boundedness_neighbourhoods"] =
      static_cast<double>(sweep_points.size());

  if (spanning) {
    report.notes.push_back(
        "probe set spans the coordinate dual (determines boundedness); "
        "weak holomorphy through these probes certifies holomorphy at this resolution");
    if (bounded)
      report.notes.push_back(
          "separating probes plus finite local-boundedness sweep also instantiated");
  } else {
    report.notes.push_back("probe set not spanning; determining-boundedness clause not "
                           "instantiated, verdict covers probed directions only");
  }
  if (!bounded) report.fail_with("local-boundedness sweep found a non-finite value");
  return report;
}

/**
 * Relation between higher-order real partial derivatives of f o phi^{-1} and
 * complex partial derivatives of f: the real multi-index b over R^{2d}
 * collapses to the complex index (b_1 + b_2, ..., b_{2d-1} + b_{2d}) with
 * phase i^(sum of the even-slot components). The left side is evaluated by
 * iterated real central differences at steps h and h/2, the right side by
 * the boundary integral on the supplied disc.
 */
inline DiagnosticReport real_complex_relation_check(const IntegrandFn& f, const CPoint& z,
                                                    const MultiIndex& real_beta,
                                                    const Polydisc& boundary,
                                                    double h = 0.0,
                                                    int nodes_per_axis = kDefaultCircleNodes,
                                                    double floor_tol = kFdResidualFloor) {
  const std::size_t d = z.dim();
  if (real_beta.dim() != 2 * d)
    throw DomainError("real_complex_relation_check: real multi-index must live over R^(2d)");
  if (real_beta.order() > 3)
    throw DomainError("real_complex_relation_check: supported orders are |b| <= 3");
  if (h == 0.0)
    h = std::pow(2.2e-16, 1.0 / (real_beta.order() + 2.0)) * (1.0 + z.sup_norm());

  // right side: i^(sum b_{2k}) d^B f(z) with B_j = b_{2j-1} + b_{2j}
  std::vector<unsigned> collapsed(d);
  unsigned imag_count = 0;
  for (std::size_t j = 0; j < d; ++j) {
    collapsed[j] = real_beta[2 * j] + real_beta[2 * j + 1];
    imag_count += real_beta[2 * j + 1];
  }
  BoundarySamples samples =
      BoundarySamples::sample(f, boundary, std::vector<int>(boundary.dim(), nodes_per_axis));
  VectorValue rhs = cauchy_derivative(samples, z, MultiIndex(collapsed)).value;
  rhs *= detail::i_power(imag_count);

  // left side: iterated real central differences in realified coordinates
  std::function<VectorValue(const std::vector<double>&, std::vector<unsigned>, double)> fd =
      [&](const std::vector<double>& x, std::vector<unsigned> remaining,
          double step) -> VectorValue {
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      if (remaining[k] > 0) {
        remaining[k] -= 1;
        std::vector<double> xp = x, xm = x;
        xp[k] += step;
        xm[k] -= step;
        return (fd(xp, remaining, step) - fd(xm, remaining, step)) *
               Complex{1.0 / (2.0 * step), 0.0};
      }
    }
    return f(CPoint::complexify(x));
  };
  const std::vector<double> x0 = z.realify();
  auto residual_at = [&](double step) {
    const VectorValue lhs = fd(x0, real_beta.exponents(), step);
    return (lhs - rhs).max_seminorm();
  };
  const double r1 = residual_at(h);
  const double r2 = residual_at(h / 2.0);
  auto [c_fit, threshold] = detail::fd_threshold(r1, r2, h, floor_tol);

  DiagnosticReport report;
  report.residuals["relation_residual"] = r1;
  report.residuals["relation_residual_half_step"] = r2;
  report.resolution["h"] = h;
  report.resolution["fitted_C"] = c_fit;
  report.resolution["threshold"] = threshold;
  if (r1 <= threshold) {
    report.verdict = Verdict::Pass;
  } else {
    report.fail_with("point " + z.to_string() + " real index " + real_beta.to_string());
  }
  return report;
}

}  // namespace polydisc
