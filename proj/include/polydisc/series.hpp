/**
 * @file series.hpp
 * @brief Multivariate Taylor series with a fixed graded-lexicographic
 *        summation order, certified geometric tail bounds derived from the
 *        boundary maxima recorded at extraction time, and truncation.
 */
#pragma once

#include <map>
#include <utility>

#include "core.hpp"

namespace polydisc {

/**
 * A Taylor expansion sum_{|b| <= degree} a_b (. - z)^b around center z,
 * valid on the open polydisc of the recorded radii. boundary_max stores,
 * per seminorm name, the maximum of the generating function on the
 * distinguished boundary used at extraction time; the coefficients then
 * satisfy p(a_b) <= M_p / rho^b, which is what the tail bound rests on.
 *
 * Coefficients are kept in graded-lex order and every evaluation sums in
 * that order, so results are bit-reproducible.
 */
class TaylorSeries {
public:
  TaylorSeries(CPoint center, std::vector<double> radii, unsigned degree,
               std::vector<std::pair<MultiIndex, VectorValue>> coefficients,
               std::map<std::string, double> boundary_max)
      : center_(std::move(center)),
        radii_(std::move(radii)),
        degree_(degree),
        coeffs_(std::move(coefficients)),
        boundary_max_(std::move(boundary_max)) {
    if (radii_.size() != center_.dim())
      throw DomainError("TaylorSeries: center/radii dimension mismatch");
    for (double r : radii_)
      if (!(r > 0.0) || !std::isfinite(r))
        throw DomainError("TaylorSeries: radii must be finite and > 0");
    if (coeffs_.empty()) throw DomainError("TaylorSeries: no coefficients");
    space_ = coeffs_.front().second.space();
    for (const auto& [beta, value] : coeffs_) {
      if (beta.dim() != center_.dim())
        throw DomainError("TaylorSeries: coefficient index dimension mismatch");
      if (beta.order() > degree_) throw DomainError("TaylorSeries: coefficient above degree");
      if (!value.space()->same_shape(*space_))
        throw DomainError("TaylorSeries: coefficient space mismatch");
    }
    std::sort(coeffs_.begin(), coeffs_.end(),
              [](const auto& a, const auto& b) { return graded_lex_less(a.first, b.first); });
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      lookup_.emplace(coeffs_[i].first.exponents(), i);
  }

  const CPoint& center() const { return center_; }
  const std::vector<double>& radii() const { return radii_; }
  unsigned degree() const { return degree_; }
  const SpacePtr& space() const { return space_; }
  const std::vector<std::pair<MultiIndex, VectorValue>>& coefficients() const { return coeffs_; }
  const std::map<std::string, double>& boundary_max() const { return boundary_max_; }

  const VectorValue* coefficient(const MultiIndex& beta) const {
    auto it = lookup_.find(beta.exponents());
    return it == lookup_.end() ? nullptr : &coeffs_[it->second].second;
  }

  /// Partial sum up to total degree n, summed in graded-lex order.
  /// Requires w strictly inside the polydisc of validity and n <= degree().
  VectorValue evaluate(const CPoint& w, unsigned n) const {
    if (w.dim() != center_.dim()) throw DomainError("TaylorSeries: point dimension mismatch");
    for (std::size_t j = 0; j < radii_.size(); ++j)
      if (!(std::abs(w[j] - center_[j]) < radii_[j]))
        throw DomainError("TaylorSeries: point outside the polydisc of validity");
    if (n > degree_) throw DomainError("TaylorSeries: requested degree exceeds stored degree");
    VectorValue acc = VectorValue::zero(space_);
    for (const auto& [beta, value] : coeffs_) {
      if (beta.order() > n) break;
      acc += value * beta.monomial(w, center_);
    }
    return acc;
  }

  VectorValue evaluate(const CPoint& w) const { return evaluate(w, degree_); }

  /// The finite sum itself, without the validity-disc guard: a truncation is
  /// a polynomial and is defined everywhere (used when the stored
  /// coefficients are the object, e.g. for polynomial approximants).
  VectorValue evaluate_truncation(const CPoint& w, unsigned n) const {
    if (w.dim() != center_.dim()) throw DomainError("TaylorSeries: point dimension mismatch");
    if (n > degree_) throw DomainError("TaylorSeries: requested degree exceeds stored degree");
    VectorValue acc = VectorValue::zero(space_);
    for (const auto& [beta, value] : coeffs_) {
      if (beta.order() > n) break;
      acc += value * beta.monomial(w, center_);
    }
    return acc;
  }

  /**
   * Exact tail of the dominating geometric series: with t_j = |w_j - z_j| /
   * rho_j < 1,
   *   M_p * ( prod_j 1/(1 - t_j) - sum_{|b| <= n} prod_j t_j^{b_j} ).
   * For functions analytic on a neighbourhood of the closed polydisc this
   * bounds the seminorm of f(w) - evaluate(w, n) up to quadrature slack.
   */
  double tail_bound(const CPoint& w, unsigned n, const std::string& seminorm) const {
    if (w.dim() != center_.dim()) throw DomainError("tail_bound: point dimension mismatch");
    auto it = boundary_max_.find(seminorm);
    if (it == boundary_max_.end())
      throw DomainError("tail_bound: no boundary maximum recorded for '" + seminorm + "'");
    std::vector<double> t(radii_.size());
    for (std::size_t j = 0; j < radii_.size(); ++j) {
      t[j] = std::abs(w[j] - center_[j]) / radii_[j];
      if (t[j] >= 1.0) throw DomainError("tail_bound: point not strictly inside, t >= 1 on axis " +
                                         std::to_string(j));
    }
    return it->second * (geometric_product(t) - partial_geometric_sum(t, n));
  }

  /// prod_j 1/(1 - t_j)
  static double geometric_product(const std::vector<double>& t) {
    double p = 1.0;
    for (double tj : t) p /= (1.0 - tj);
    return p;
  }

  /// sum over all |b| <= n of prod_j t_j^{b_j}
  static double partial_geometric_sum(const std::vector<double>& t, unsigned n) {
    double s = 0.0;
    for (const auto& beta : multi_indices_up_to(t.size(), n)) {
      double term = 1.0;
      for (std::size_t j = 0; j < t.size(); ++j)
        for (unsigned k = 0; k < beta[j]; ++k) term *= t[j];
      s += term;
    }
    return s;
  }

  /// Copy truncated to total degree n (coefficients above n dropped).
  TaylorSeries truncated(unsigned n) const {
    std::vector<std::pair<MultiIndex, VectorValue>> kept;
    for (const auto& entry : coeffs_)
      if (entry.first.order() <= n) kept.push_back(entry);
    return TaylorSeries(center_, radii_, std::min(n, degree_), std::move(kept), boundary_max_);
  }

private:
  CPoint center_;
  std::vector<double> radii_;
  unsigned degree_;
  std::vector<std::pair<MultiIndex, VectorValue>> coeffs_;
  std::map<std::string, double> boundary_max_;
  std::map<std::vector<unsigned>, std::size_t> lookup_;
  SpacePtr space_;
};

}  // namespace polydisc
