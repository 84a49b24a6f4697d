/**
 * @file quadrature.hpp
 * @brief Curve integrals of E-valued functions along tensor-product C1
 *        curves: periodic trapezoidal rule on circles, composite
 *        Gauss-Legendre panels elsewhere, iterated rectangle integration,
 *        fundamental-theorem residuals, and differentiation under the
 *        integral sign.
 */
#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "core.hpp"

namespace polydisc {

inline constexpr int kDefaultCircleNodes = 64;
inline constexpr int kDefaultPanels = 8;

enum class Smoothness { Continuous, AnalyticOnAnnulus };

/**
 * An E-valued integrand z -> f(z) with an optional domain predicate and a
 * declared smoothness class. Evaluation through operator() enforces the
 * predicate and reports failures with the offending point.
 */
struct IntegrandFn {
  std::function<VectorValue(const CPoint&)> eval;
  SpacePtr space;
  std::function<bool(const CPoint&)> domain;  // empty means everywhere
  Smoothness smoothness = Smoothness::AnalyticOnAnnulus;

  VectorValue operator()(const CPoint& z) const {
    if (domain && !domain(z)) throw EvaluationError("integrand undefined", z);
    VectorValue v = eval(z);
    if (!v.space()->same_shape(*space)) throw DomainError("IntegrandFn: value space mismatch");
    return v;
  }

  static IntegrandFn scalar(std::function<Complex(const CPoint&)> f,
                            std::function<bool(const CPoint&)> domain = {},
                            Smoothness smoothness = Smoothness::AnalyticOnAnnulus) {
    auto space = SpaceDescriptor::scalar();
    return IntegrandFn{
        [f = std::move(f), space](const CPoint& z) { return VectorValue(space, {f(z)}); },
        space, std::move(domain), smoothness};
  }

  static IntegrandFn vector(SpacePtr space,
                            std::function<VectorValue(const CPoint&)> f,
                            std::function<bool(const CPoint&)> domain = {},
                            Smoothness smoothness = Smoothness::AnalyticOnAnnulus) {
    return IntegrandFn{std::move(f), std::move(space), std::move(domain), smoothness};
  }
};

class IntegrationError : public Error {
public:
  using Error::Error;
};

namespace detail {

/// Gauss-Legendre nodes and weights on [-1,1], computed by Newton iteration
/// on the Legendre recurrence. Cached per order.
inline const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess for the i-th root
    double root = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double deriv = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = root;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * root * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      deriv = n * (root * p1 - p0) / (root * root - 1.0);
      double step = p1 / deriv;
      root -= step;
      if (std::abs(step) < 1e-16) break;
    }
    x[i] = root;
    w[i] = 2.0 / ((1.0 - root * root) * deriv * deriv);
  }
  return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

/// Parameter nodes and weights for one curve axis. Circles use the periodic
/// trapezoidal rule (spectrally accurate for integrands analytic in an
/// annulus around the circle); everything else uses composite 16-point
/// Gauss-Legendre panels, where n counts panels.
struct AxisRule {
  std::vector<double> t;
  std::vector<double> w;
};

inline AxisRule axis_rule(const CurveAxis& axis, int n) {
  if (n < 4) throw DomainError("integrate_curve: need at least 4 nodes/panels per axis");
  AxisRule rule;
  if (axis.kind() == CurveAxis::Kind::Circle) {
    rule.t.resize(n);
    rule.w.assign(n, kTwoPi / n);
    for (int j = 0; j < n; ++j) rule.t[j] = kTwoPi * j / n;
  } else {
    const auto& [gx, gw] = gauss_legendre(16);
    const double panel = 1.0 / n;
    rule.t.reserve(16 * n);
    rule.w.reserve(16 * n);
    for (int p = 0; p < n; ++p) {
      const double a = p * panel;
      for (int q = 0; q < 16; ++q) {
        rule.t.push_back(a + 0.5 * panel * (gx[q] + 1.0));
        rule.w.push_back(0.5 * panel * gw[q]);
      }
    }
  }
  return rule;
}

inline std::vector<int> resolve_nodes(const CurveC1& curve, std::vector<int> nodes) {
  if (nodes.empty()) {
    nodes.resize(curve.dim());
    for (std::size_t k = 0; k < curve.dim(); ++k)
      nodes[k] = curve.axis(k).kind() == CurveAxis::Kind::Circle ? kDefaultCircleNodes
                                                                 : kDefaultPanels;
  }
  if (nodes.size() != curve.dim())
    throw DomainError("integrate_curve: nodes/curve dimension mismatch");
  return nodes;
}

}  // namespace detail

/**
 * Tensor-product quadrature of int_gamma f(z) dz
 *   = int f(gamma(t)) prod_k gamma_k'(t_k) dt,
 * computed componentwise over E with a fixed axis-major accumulation order.
 *
 * A zero-length component makes the exact integral vanish; the zero vector
 * is returned and *degenerate_warning (when supplied) is set.
 */
inline VectorValue integrate_curve(const IntegrandFn& f, const CurveC1& curve,
                                   std::vector<int> nodes = {},
                                   std::size_t node_budget = 0,
                                   bool* degenerate_warning = nullptr) {
  if (node_budget == 0) node_budget = process_grid_cap();
  nodes = detail::resolve_nodes(curve, nodes);
  if (degenerate_warning) *degenerate_warning = false;
  for (std::size_t k = 0; k < curve.dim(); ++k) {
    if (curve.axis(k).length() == 0.0) {
      if (degenerate_warning) *degenerate_warning = true;
      return VectorValue::zero(f.space);
    }
  }

  std::vector<detail::AxisRule> rules;
  std::size_t total = 1;
  for (std::size_t k = 0; k < curve.dim(); ++k) {
    rules.push_back(detail::axis_rule(curve.axis(k), nodes[k]));
    const std::size_t nk = rules.back().t.size();
    if (total > node_budget / nk)
      throw ResourceError("integrate_curve: node budget of " + std::to_string(node_budget) +
                          " exceeded");
    total *= nk;
  }

  // cached per-axis values and weighted derivatives
  std::vector<std::vector<Complex>> vals(curve.dim()), wder(curve.dim());
  for (std::size_t k = 0; k < curve.dim(); ++k) {
    const auto& rule = rules[k];
    vals[k].resize(rule.t.size());
    wder[k].resize(rule.t.size());
    for (std::size_t j = 0; j < rule.t.size(); ++j) {
      vals[k][j] = curve.axis(k).value(rule.t[j]);
      wder[k][j] = rule.w[j] * curve.axis(k).derivative(rule.t[j]);
    }
  }

  VectorValue acc = VectorValue::zero(f.space);
  std::vector<std::size_t> idx(curve.dim(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    Complex factor{1.0, 0.0};
    std::vector<Complex> z(curve.dim());
    for (std::size_t k = curve.dim(); k-- > 0;) {
      const std::size_t j = rem % vals[k].size();
      rem /= vals[k].size();
      z[k] = vals[k][j];
      factor *= wder[k][j];
    }
    CPoint point(std::move(z));
    try {
      acc += f(point) * factor;
    } catch (const EvaluationError& e) {
      throw IntegrationError(std::string("integrand evaluation failed at node ") +
                             point.to_string() + ": " + e.what());
    }
  }
  return acc;
}

enum class RectOrder { Tensor, XThenY, YThenX };

/**
 * Integral of a continuous f : [a,b] x [c,d] -> E, either as one
 * tensor-product pass or iterated in the requested order. The three variants
 * agree within the cross-order tolerance for weakly C1 integrands.
 */
inline VectorValue integrate_rectangle(const std::function<VectorValue(double, double)>& f,
                                       SpacePtr space, double a, double b, double c, double d,
                                       RectOrder order = RectOrder::Tensor, int panels_x = 8,
                                       int panels_y = 8) {
  if (!(a <= b && c <= d)) throw DomainError("integrate_rectangle: empty or inverted rectangle");
  const auto& [gx, gw] = detail::gauss_legendre(16);
  auto make_rule = [&](double lo, double hi, int panels) {
    detail::AxisRule r;
    const double panel = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p)
      for (int q = 0; q < 16; ++q) {
        r.t.push_back(lo + panel * (p + 0.5 * (gx[q] + 1.0)));
        r.w.push_back(0.5 * panel * gw[q]);
      }
    return r;
  };
  const detail::AxisRule rx = make_rule(a, b, panels_x);
  const detail::AxisRule ry = make_rule(c, d, panels_y);

  switch (order) {
    case RectOrder::Tensor: {
      VectorValue acc = VectorValue::zero(space);
      for (std::size_t i = 0; i < rx.t.size(); ++i)
        for (std::size_t j = 0; j < ry.t.size(); ++j)
          acc += f(rx.t[i], ry.t[j]) * Complex{rx.w[i] * ry.w[j], 0.0};
      return acc;
    }
    case RectOrder::XThenY: {
      VectorValue acc = VectorValue::zero(space);
      for (std::size_t j = 0; j < ry.t.size(); ++j) {
        VectorValue inner = VectorValue::zero(space);
        for (std::size_t i = 0; i < rx.t.size(); ++i)
          inner += f(rx.t[i], ry.t[j]) * Complex{rx.w[i], 0.0};
        acc += inner * Complex{ry.w[j], 0.0};
      }
      return acc;
    }
    case RectOrder::YThenX: {
      VectorValue acc = VectorValue::zero(space);
      for (std::size_t i = 0; i < rx.t.size(); ++i) {
        VectorValue inner = VectorValue::zero(space);
        for (std::size_t j = 0; j < ry.t.size(); ++j)
          inner += f(rx.t[i], ry.t[j]) * Complex{ry.w[j], 0.0};
        acc += inner * Complex{rx.w[i], 0.0};
      }
      return acc;
    }
  }
  throw DomainError("integrate_rectangle: unhandled order");
}

/**
 * Residual of the fundamental theorem of calculus for a one-variable curve:
 * the seminorm-wise maximum of int_gamma f - (F(gamma(b)) - F(gamma(a))).
 * The caller asserts F' = f near the curve image.
 */
inline double ftc_check(const IntegrandFn& f, const IntegrandFn& primitive, const CurveC1& gamma,
                        std::vector<int> nodes = {}) {
  if (gamma.dim() != 1) throw DomainError("ftc_check: requires a curve in C (d = 1)");
  const VectorValue integral = integrate_curve(f, gamma, std::move(nodes));
  const CPoint za({gamma.axis(0).value(gamma.axis(0).param_begin())});
  const CPoint zb({gamma.axis(0).value(gamma.axis(0).param_end())});
  const VectorValue delta = primitive(zb) - primitive(za);
  const VectorValue diff = integral - delta;
  double res = 0.0;
  for (const auto& p : f.space->seminorms()) res = std::max(res, diff.seminorm(p));
  return res;
}

/**
 * A parameter-dependent integrand f(z, lambda), optionally with its complex
 * partial derivative in the lambda_j direction.
 */
struct ParametricIntegrand {
  std::function<VectorValue(const CPoint&, const CPoint&)> eval;
  SpacePtr space;
  std::function<VectorValue(const CPoint&, const CPoint&)> d_lambda;  // optional
};

/**
 * d/d lambda_j of G(lambda) = int_gamma f(z, lambda) dz, computed as the
 * curve integral of the lambda_j-derivative of the integrand. Without a
 * supplied derivative, the complex central difference
 * (f(z, lambda + h e_j) - f(z, lambda - h e_j)) / (2h) is used with
 * h = 1e-5 (scaled by |lambda_j| when that is nonzero), and agreement
 * weakens to O(h^2).
 */
inline VectorValue differentiate_parametric_integral(const ParametricIntegrand& f,
                                                     const CurveC1& gamma, const CPoint& lambda,
                                                     std::size_t j, std::vector<int> nodes = {}) {
  if (j >= lambda.dim()) throw DomainError("differentiate_parametric_integral: axis out of range");

  std::function<VectorValue(const CPoint&)> integrand;
  if (f.d_lambda) {
    integrand = [&f, &lambda](const CPoint& z) { return f.d_lambda(z, lambda); };
  } else {
    double h = 1e-5;
    const double mag = std::abs(lambda[j]);
    if (mag > 0.0) h = 1e-5 * mag;
    if (h < 1e-12)
      throw DomainError("differentiate_parametric_integral: finite-difference step underflow");
    const CPoint lp = lambda.with_coord(j, lambda[j] + Complex{h, 0.0});
    const CPoint lm = lambda.with_coord(j, lambda[j] - Complex{h, 0.0});
    integrand = [&f, lp, lm, h](const CPoint& z) {
      return (f.eval(z, lp) - f.eval(z, lm)) * Complex{1.0 / (2.0 * h), 0.0};
    };
  }
  IntegrandFn g{integrand, f.space, {}, Smoothness::AnalyticOnAnnulus};
  return integrate_curve(g, gamma, std::move(nodes));
}

}  // namespace polydisc
