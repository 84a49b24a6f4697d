/**
 * @file liouville.hpp
 * @brief Polynomial-degree classification of entire functions from
 *        coefficient decay across growing boundary radii.
 */
#pragma once

#include <optional>

#include "cauchy.hpp"

namespace polydisc {

struct LiouvilleWitness {
  MultiIndex beta;
  double radius;
  double magnitude;
};

struct LiouvilleResult {
  bool is_poly_deg_k = false;
  std::optional<LiouvilleWitness> witness;  // largest violating coefficient
};

/**
 * Tests whether an entire function is a polynomial of degree <= k by
 * extracting the coefficients with |b| in (k, k+d] on boundary grids of
 * every listed radius. Growth bounded by |z|^k forces these coefficients to
 * decay like M / rho^|b|, so each one must stay below
 * tol * (1 + M_p / rho^|b|) at every radius; any survivor is reported as the
 * witness. The seminorm family is finite, so the test covers exactly the
 * listed seminorms.
 */
inline LiouvilleResult liouville_test(const IntegrandFn& f, std::size_t d, unsigned k,
                                      std::vector<double> radii_sequence = {2.0, 8.0},
                                      const std::string& seminorm = "sup", double tol = 1e-8,
                                      int nodes_per_axis = 0) {
  if (radii_sequence.size() < 2)
    throw DomainError("liouville_test: need at least two radii");
  for (std::size_t i = 1; i < radii_sequence.size(); ++i)
    if (!(radii_sequence[i] > radii_sequence[i - 1]))
      throw DomainError("liouville_test: radii must be strictly increasing");
  if (!(radii_sequence.back() / radii_sequence.front() >= 4.0))
    throw DomainError("liouville_test: largest/smallest radius ratio must be >= 4");

  const unsigned probe_degree = k + static_cast<unsigned>(d);
  int nodes = nodes_per_axis;
  if (nodes == 0) nodes = std::max(32, 2 * (static_cast<int>(probe_degree) + 2));
  if (nodes % 2 != 0) ++nodes;

  LiouvilleResult result;
  result.is_poly_deg_k = true;
  double worst = 0.0;
  for (double rho : radii_sequence) {
    Polydisc disc(CPoint::zero(d), std::vector<double>(d, rho));
    BoundarySamples samples = BoundarySamples::sample(f, disc, std::vector<int>(d, nodes));
    TaylorSeries series = taylor_coefficients(samples, probe_degree);
    const double boundary_max = samples.boundary_max(seminorm);
    for (const auto& [beta, coef] : series.coefficients()) {
      if (beta.order() <= k) continue;
      double decay = boundary_max;
      for (unsigned i = 0; i < beta.order(); ++i) decay /= rho;
      const double magnitude = coef.seminorm(seminorm);
      if (magnitude > tol * (1.0 + decay)) {
        result.is_poly_deg_k = false;
        if (magnitude > worst) {
          worst = magnitude;
          result.witness = LiouvilleWitness{beta, rho, magnitude};
        }
      }
    }
  }
  return result;
}

}  // namespace polydisc
