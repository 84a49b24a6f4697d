/**
 * @file core.hpp
 * @brief Domain types for vector-valued complex analysis on polydiscs:
 *        points in C^d, multi-indices, polydiscs and their distinguished
 *        boundary, finite-dimensional value spaces with seminorm families,
 *        linear functionals, and tensor-product C1 curves.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polydisc {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default cap on tensor-grid sizes (number of points) before a resource
/// error is raised. Overridable per call; the POLYDISC_MAX_GRID environment
/// variable replaces the process-wide default.
inline constexpr std::size_t kDefaultGridCap = std::size_t{1} << 24;

inline std::size_t process_grid_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("POLYDISC_MAX_GRID")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultGridCap;
  }();
  return cap;
}

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition or invalid input (CLI exit code 2).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Exhausted node/grid/memory budget (CLI exit code 3).
class ResourceError : public Error {
public:
  using Error::Error;
};

namespace detail {

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline std::string format_complex(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace detail

/**
 * A point in C^d. Immutable after construction; components are finite.
 *
 * realify() implements the coordinatewise identification of C^d with R^2d,
 * (z_1,...,z_d) -> (Re z_1, Im z_1, ..., Re z_d, Im z_d), an exact
 * component copy and therefore a Euclidean isometry.
 */
class CPoint {
public:
  explicit CPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DomainError("CPoint: dimension must be >= 1");
    for (const auto& c : coords_)
      if (!detail::is_finite(c)) throw DomainError("CPoint: non-finite component");
  }

  CPoint(std::initializer_list<Complex> coords) : CPoint(std::vector<Complex>(coords)) {}

  static CPoint zero(std::size_t d) { return CPoint(std::vector<Complex>(d, Complex{0.0, 0.0})); }

  std::size_t dim() const { return coords_.size(); }
  const Complex& operator[](std::size_t j) const { return coords_[j]; }
  const std::vector<Complex>& coords() const { return coords_; }

  std::vector<double> realify() const {
    std::vector<double> x;
    x.reserve(2 * coords_.size());
    for (const auto& c : coords_) {
      x.push_back(c.real());
      x.push_back(c.imag());
    }
    return x;
  }

  static CPoint complexify(const std::vector<double>& x) {
    if (x.empty() || x.size() % 2 != 0)
      throw DomainError("complexify: length must be a positive even number");
    std::vector<Complex> c(x.size() / 2);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = Complex{x[2 * j], x[2 * j + 1]};
    return CPoint(std::move(c));
  }

  double norm() const {
    double s = 0.0;
    for (const auto& c : coords_) s += std::norm(c);
    return std::sqrt(s);
  }

  double sup_norm() const {
    double s = 0.0;
    for (const auto& c : coords_) s = std::max(s, std::abs(c));
    return s;
  }

  CPoint with_coord(std::size_t j, Complex v) const {
    std::vector<Complex> c = coords_;
    c.at(j) = v;
    return CPoint(std::move(c));
  }

  friend CPoint operator+(const CPoint& a, const CPoint& b) {
    check_dims(a, b);
    std::vector<Complex> c(a.dim());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = a[j] + b[j];
    return CPoint(std::move(c));
  }

  friend CPoint operator-(const CPoint& a, const CPoint& b) {
    check_dims(a, b);
    std::vector<Complex> c(a.dim());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = a[j] - b[j];
    return CPoint(std::move(c));
  }

  friend CPoint operator*(Complex s, const CPoint& a) {
    std::vector<Complex> c(a.dim());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = s * a[j];
    return CPoint(std::move(c));
  }

  friend bool operator==(const CPoint& a, const CPoint& b) { return a.coords_ == b.coords_; }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t j = 0; j < coords_.size(); ++j) {
      if (j) s += ", ";
      s += detail::format_complex(coords_[j]);
    }
    return s + ")";
  }

private:
  static void check_dims(const CPoint& a, const CPoint& b) {
    if (a.dim() != b.dim()) throw DomainError("CPoint: dimension mismatch");
  }

  std::vector<Complex> coords_;
};

inline double distance(const CPoint& a, const CPoint& b) { return (a - b).norm(); }

/// Integrand evaluation failure carrying the offending point (CLI exit code 2).
class EvaluationError : public DomainError {
public:
  EvaluationError(const std::string& what, CPoint where)
      : DomainError(what + " at " + where.to_string()), where_(std::move(where)) {}
  const CPoint& where() const { return where_; }

private:
  CPoint where_;
};

/**
 * A multi-index b in N_0^d with order |b| = sum b_j, exact factorial
 * b! = prod (b_j!), and monomial powers (z - c)^b = prod (z_j - c_j)^{b_j}.
 *
 * Factorials are computed in 128-bit integers and are exact for b_j <= 20
 * per component; larger components or an overflowing product raise a
 * DomainError instead of silently losing precision.
 */
class MultiIndex {
public:
  explicit MultiIndex(std::vector<unsigned> exponents) : exp_(std::move(exponents)) {
    if (exp_.empty()) throw DomainError("MultiIndex: dimension must be >= 1");
  }

  MultiIndex(std::initializer_list<unsigned> exponents)
      : MultiIndex(std::vector<unsigned>(exponents)) {}

  static MultiIndex zero(std::size_t d) { return MultiIndex(std::vector<unsigned>(d, 0u)); }
  static MultiIndex unit(std::size_t d, std::size_t j) {
    std::vector<unsigned> e(d, 0u);
    e.at(j) = 1u;
    return MultiIndex(std::move(e));
  }

  std::size_t dim() const { return exp_.size(); }
  unsigned operator[](std::size_t j) const { return exp_[j]; }
  const std::vector<unsigned>& exponents() const { return exp_; }

  unsigned order() const {
    std::uint64_t s = 0;
    for (unsigned e : exp_) s += e;
    return static_cast<unsigned>(s);
  }

  /// b! as an exact 128-bit integer. Throws for components > 20 or on overflow.
  unsigned __int128 factorial_exact() const {
    unsigned __int128 prod = 1;
    for (unsigned e : exp_) {
      if (e > 20u) throw DomainError("MultiIndex: factorial component exceeds 20");
      unsigned __int128 f = 1;
      for (unsigned k = 2; k <= e; ++k) f *= k;
      unsigned __int128 next = prod * f;
      if (f != 0 && next / f != prod) throw DomainError("MultiIndex: factorial overflow");
      prod = next;
    }
    return prod;
  }

  double factorial() const { return static_cast<double>(factorial_exact()); }

  /// (z - center)^b with the convention 0^0 = 1.
  Complex monomial(const CPoint& z, const CPoint& center) const {
    if (z.dim() != dim() || center.dim() != dim())
      throw DomainError("MultiIndex: dimension mismatch in monomial");
    Complex p{1.0, 0.0};
    for (std::size_t j = 0; j < dim(); ++j) {
      const Complex base = z[j] - center[j];
      for (unsigned k = 0; k < exp_[j]; ++k) p *= base;
    }
    return p;
  }

  MultiIndex plus(const MultiIndex& other) const {
    if (other.dim() != dim()) throw DomainError("MultiIndex: dimension mismatch");
    std::vector<unsigned> e(dim());
    for (std::size_t j = 0; j < dim(); ++j) e[j] = exp_[j] + other.exp_[j];
    return MultiIndex(std::move(e));
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.exp_ == b.exp_; }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t j = 0; j < exp_.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(exp_[j]);
    }
    return s + ")";
  }

private:
  std::vector<unsigned> exp_;
};

/// Graded-lexicographic order: first by |b|, then lexicographically by
/// components (earlier axes more significant). This is the fixed summation
/// and enumeration order used throughout.
inline bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.exponents() < b.exponents();
}

namespace detail {

inline void enumerate_level(std::size_t d, unsigned total, std::vector<unsigned>& cur,
                            std::size_t axis, std::vector<MultiIndex>& out) {
  if (axis + 1 == d) {
    cur[axis] = total;
    out.push_back(MultiIndex(cur));
    return;
  }
  for (unsigned e = 0; e <= total; ++e) {
    cur[axis] = e;
    enumerate_level(d, total - e, cur, axis + 1, out);
  }
}

}  // namespace detail

/// All multi-indices with |b| <= max_total in graded-lex order.
inline std::vector<MultiIndex> multi_indices_up_to(std::size_t d, unsigned max_total) {
  if (d == 0) throw DomainError("multi_indices_up_to: dimension must be >= 1");
  std::vector<MultiIndex> out;
  std::vector<unsigned> cur(d, 0u);
  for (unsigned total = 0; total <= max_total; ++total)
    detail::enumerate_level(d, total, cur, 0, out);
  return out;
}

/**
 * A polydisc D_rho(w): the product of per-axis open discs with center w and
 * strictly positive finite radii rho. Its distinguished boundary is the
 * product of the boundary circles (a d-torus).
 */
class Polydisc {
public:
  Polydisc(CPoint center, std::vector<double> radii)
      : center_(std::move(center)), radii_(std::move(radii)) {
    if (radii_.size() != center_.dim()) throw DomainError("Polydisc: center/radii dimension mismatch");
    for (double r : radii_)
      if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("Polydisc: radii must be finite and > 0");
  }

  std::size_t dim() const { return center_.dim(); }
  const CPoint& center() const { return center_; }
  const std::vector<double>& radii() const { return radii_; }

  /// Strict componentwise membership |z_j - w_j| < rho_j.
  bool contains(const CPoint& z) const {
    if (z.dim() != dim()) return false;
    for (std::size_t j = 0; j < dim(); ++j)
      if (!(std::abs(z[j] - center_[j]) < radii_[j])) return false;
    return true;
  }

  /// |z_j - w_j| = rho_j on every axis, within relative tolerance.
  bool on_distinguished_boundary(const CPoint& z, double rel_tol = 1e-12) const {
    if (z.dim() != dim()) return false;
    for (std::size_t j = 0; j < dim(); ++j)
      if (std::abs(std::abs(z[j] - center_[j]) - radii_[j]) > rel_tol * radii_[j]) return false;
    return true;
  }

  /// Componentwise radii ordering rho < R.
  bool radii_less(const Polydisc& other) const {
    if (other.dim() != dim()) throw DomainError("Polydisc: dimension mismatch");
    for (std::size_t j = 0; j < dim(); ++j)
      if (!(radii_[j] < other.radii_[j])) return false;
    return true;
  }

  Polydisc scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("Polydisc: scale factor must be > 0");
    std::vector<double> r = radii_;
    for (double& x : r) x *= factor;
    return Polydisc(center_, std::move(r));
  }

private:
  CPoint center_;
  std::vector<double> radii_;
};

/// Named seminorm from the fixed catalogue.
struct Seminorm {
  enum class Kind { CoordinateSup, Euclidean, CoordinateAbs, OperatorNorm };

  Kind kind = Kind::CoordinateSup;
  std::size_t index = 0;  // used by CoordinateAbs
  std::string name;

  static Seminorm coordinate_sup() { return {Kind::CoordinateSup, 0, "sup"}; }
  static Seminorm euclidean() { return {Kind::Euclidean, 0, "euclidean"}; }
  static Seminorm coordinate_abs(std::size_t i) {
    return {Kind::CoordinateAbs, i, "coord" + std::to_string(i)};
  }
  static Seminorm operator_norm() { return {Kind::OperatorNorm, 0, "opnorm"}; }

  /// True for members of the catalogue that are norms (separating on their own).
  bool is_norm() const { return kind != Kind::CoordinateAbs; }
};

namespace detail {

/// Largest singular value of an m x m matrix (row-major) by power iteration
/// on A^H A. Deterministic start vector; plenty accurate for the small m used
/// in value spaces.
inline double spectral_norm(const std::vector<Complex>& a, std::size_t m) {
  std::vector<Complex> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = Complex{1.0 + 0.25 * static_cast<double>(i), 0.0};
  auto matvec = [&](const std::vector<Complex>& x) {
    std::vector<Complex> y(m, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) y[r] += a[r * m + c] * x[c];
    return y;
  };
  auto matvec_h = [&](const std::vector<Complex>& x) {
    std::vector<Complex> y(m, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) y[c] += std::conj(a[r * m + c]) * x[r];
    return y;
  };
  double sigma = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Complex> w = matvec(v);
    double wn = 0.0;
    for (const auto& x : w) wn += std::norm(x);
    wn = std::sqrt(wn);
    if (wn < 1e-300) return 0.0;
    std::vector<Complex> u = matvec_h(w);
    double un = 0.0;
    for (const auto& x : u) un += std::norm(x);
    un = std::sqrt(un);
    if (un < 1e-300) return 0.0;
    for (auto& x : u) x /= un;
    double next = wn;  // ||A v|| with ||v|| = 1
    v = std::move(u);
    if (iter > 8 && std::abs(next - sigma) <= 1e-14 * std::max(1.0, next)) return next;
    sigma = next;
  }
  return sigma;
}

}  // namespace detail

/**
 * Descriptor of the finite-dimensional value space E: either C^m or the
 * space of m x m complex matrices, together with a finite family of named
 * seminorms. The family must contain at least one norm so that it separates
 * points of E.
 */
class SpaceDescriptor {
public:
  enum class Kind { Coordinates, Matrices };

  SpaceDescriptor(Kind kind, std::size_t m, std::vector<Seminorm> seminorms)
      : kind_(kind), m_(m), seminorms_(std::move(seminorms)) {
    if (m_ == 0) throw DomainError("SpaceDescriptor: dimension must be >= 1");
    if (seminorms_.empty()) throw DomainError("SpaceDescriptor: seminorm family must be non-empty");
    bool has_norm = false;
    for (const auto& p : seminorms_) {
      if (p.kind == Seminorm::Kind::OperatorNorm && kind_ != Kind::Matrices)
        throw DomainError("SpaceDescriptor: operator norm requires a matrix space");
      if (p.kind == Seminorm::Kind::CoordinateAbs && p.index >= entry_count())
        throw DomainError("SpaceDescriptor: coordinate seminorm index out of range");
      has_norm = has_norm || p.is_norm();
    }
    if (!has_norm)
      throw DomainError("SpaceDescriptor: family must contain a norm to separate points");
  }

  static std::shared_ptr<const SpaceDescriptor> coordinates(
      std::size_t m, std::vector<Seminorm> seminorms = {Seminorm::coordinate_sup(),
                                                        Seminorm::euclidean()}) {
    return std::make_shared<const SpaceDescriptor>(Kind::Coordinates, m, std::move(seminorms));
  }

  static std::shared_ptr<const SpaceDescriptor> matrices(
      std::size_t m, std::vector<Seminorm> seminorms = {Seminorm::coordinate_sup(),
                                                        Seminorm::euclidean(),
                                                        Seminorm::operator_norm()}) {
    return std::make_shared<const SpaceDescriptor>(Kind::Matrices, m, std::move(seminorms));
  }

  /// C^1 with the modulus as its only (semi)norm.
  static std::shared_ptr<const SpaceDescriptor> scalar() {
    return coordinates(1, {Seminorm::coordinate_sup()});
  }

  Kind kind() const { return kind_; }
  std::size_t m() const { return m_; }
  std::size_t entry_count() const { return kind_ == Kind::Matrices ? m_ * m_ : m_; }
  const std::vector<Seminorm>& seminorms() const { return seminorms_; }

  const Seminorm& seminorm_named(const std::string& name) const {
    for (const auto& p : seminorms_)
      if (p.name == name) return p;
    throw DomainError("SpaceDescriptor: unknown seminorm '" + name + "'");
  }

  double apply_seminorm(const Seminorm& p, const std::vector<Complex>& entries) const {
    switch (p.kind) {
      case Seminorm::Kind::CoordinateSup: {
        double s = 0.0;
        for (const auto& e : entries) s = std::max(s, std::abs(e));
        return s;
      }
      case Seminorm::Kind::Euclidean: {
        double s = 0.0;
        for (const auto& e : entries) s += std::norm(e);
        return std::sqrt(s);
      }
      case Seminorm::Kind::CoordinateAbs:
        return std::abs(entries[p.index]);
      case Seminorm::Kind::OperatorNorm:
        return detail::spectral_norm(entries, m_);
    }
    throw DomainError("SpaceDescriptor: unhandled seminorm kind");
  }

  bool same_shape(const SpaceDescriptor& other) const {
    return kind_ == other.kind_ && m_ == other.m_;
  }

private:
  Kind kind_;
  std::size_t m_;
  std::vector<Seminorm> seminorms_;
};

using SpacePtr = std::shared_ptr<const SpaceDescriptor>;

/**
 * An element of the value space E. Componentwise arithmetic; seminorms are
 * evaluated through the space descriptor.
 */
class VectorValue {
public:
  VectorValue(SpacePtr space, std::vector<Complex> entries)
      : space_(std::move(space)), entries_(std::move(entries)) {
    if (!space_) throw DomainError("VectorValue: null space descriptor");
    if (entries_.size() != space_->entry_count())
      throw DomainError("VectorValue: entry count does not match space");
  }

  static VectorValue zero(SpacePtr space) {
    std::vector<Complex> e(space->entry_count(), Complex{0.0, 0.0});
    return VectorValue(std::move(space), std::move(e));
  }

  static VectorValue scalar_value(Complex v) {
    return VectorValue(SpaceDescriptor::scalar(), {v});
  }

  const SpacePtr& space() const { return space_; }
  const std::vector<Complex>& entries() const { return entries_; }
  Complex operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }

  bool finite() const {
    for (const auto& e : entries_)
      if (!detail::is_finite(e)) return false;
    return true;
  }

  double seminorm(const Seminorm& p) const { return space_->apply_seminorm(p, entries_); }
  double seminorm(const std::string& name) const {
    return seminorm(space_->seminorm_named(name));
  }
  double max_seminorm() const {
    double s = 0.0;
    for (const auto& p : space_->seminorms()) s = std::max(s, seminorm(p));
    return s;
  }

  VectorValue& operator+=(const VectorValue& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
  }
  VectorValue& operator-=(const VectorValue& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
  }
  VectorValue& operator*=(Complex s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

  friend VectorValue operator+(VectorValue a, const VectorValue& b) { return a += b; }
  friend VectorValue operator-(VectorValue a, const VectorValue& b) { return a -= b; }
  friend VectorValue operator*(Complex s, VectorValue a) { return a *= s; }
  friend VectorValue operator*(VectorValue a, Complex s) { return a *= s; }

private:
  void check_compatible(const VectorValue& other) const {
    if (!space_->same_shape(*other.space_))
      throw DomainError("VectorValue: value space mismatch");
  }

  SpacePtr space_;
  std::vector<Complex> entries_;
};

/**
 * A continuous linear functional on E with the bilinear (conjugation-free)
 * pairing e'(x) = sum_i weights_i * x_i. The coordinate probes (unit-weight
 * single-entry functionals) separate points of E.
 */
class Functional {
public:
  Functional(SpacePtr space, std::vector<Complex> weights)
      : space_(std::move(space)), weights_(std::move(weights)) {
    if (!space_) throw DomainError("Functional: null space descriptor");
    if (weights_.size() != space_->entry_count())
      throw DomainError("Functional: weight count does not match space");
  }

  static Functional coordinate(SpacePtr space, std::size_t i) {
    std::vector<Complex> w(space->entry_count(), Complex{0.0, 0.0});
    w.at(i) = Complex{1.0, 0.0};
    return Functional(std::move(space), std::move(w));
  }

  static std::vector<Functional> coordinate_probes(const SpacePtr& space) {
    std::vector<Functional> probes;
    probes.reserve(space->entry_count());
    for (std::size_t i = 0; i < space->entry_count(); ++i)
      probes.push_back(coordinate(space, i));
    return probes;
  }

  const SpacePtr& space() const { return space_; }
  const std::vector<Complex>& weights() const { return weights_; }

  Complex apply(const VectorValue& x) const {
    if (!space_->same_shape(*x.space())) throw DomainError("Functional: value space mismatch");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * x[i];
    return s;
  }

private:
  SpacePtr space_;
  std::vector<Complex> weights_;
};

namespace detail {

/// Cubic Hermite interpolation of (value, derivative) tables on a uniform
/// grid over [0,1]; used by sampled curve axes.
struct HermiteTable {
  std::vector<Complex> values;
  std::vector<Complex> derivs;

  std::size_t segments() const { return values.size() - 1; }

  Complex value(double t) const {
    auto [i, u, dt] = locate(t);
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    return h00 * values[i] + h10 * dt * derivs[i] + h01 * values[i + 1] + h11 * dt * derivs[i + 1];
  }

  Complex derivative(double t) const {
    auto [i, u, dt] = locate(t);
    const double u2 = u * u;
    const double g00 = 6 * u2 - 6 * u, g10 = 3 * u2 - 4 * u + 1;
    const double g01 = -6 * u2 + 6 * u, g11 = 3 * u2 - 2 * u;
    return (g00 * values[i] + g01 * values[i + 1]) / dt + g10 * derivs[i] + g11 * derivs[i + 1];
  }

private:
  std::tuple<std::size_t, double, double> locate(double t) const {
    const std::size_t n = segments();
    const double dt = 1.0 / static_cast<double>(n);
    double clamped = std::clamp(t, 0.0, 1.0);
    std::size_t i = std::min(static_cast<std::size_t>(clamped * n), n - 1);
    return {i, (clamped - i * dt) / dt, dt};
  }
};

}  // namespace detail

/**
 * One complex-plane component of a tensor-product C1 curve. Closed-form
 * kinds carry analytic derivatives; sampled axes interpolate node/derivative
 * tables on a uniform parameter grid.
 */
class CurveAxis {
public:
  enum class Kind { Circle, Arc, Segment, Sampled };

  static CurveAxis circle(Complex center, double radius) {
    CurveAxis a;
    a.kind_ = Kind::Circle;
    a.center_ = center;
    a.radius_ = require_nonneg(radius);
    return a;
  }

  static CurveAxis arc(Complex center, double radius, double theta0, double theta1) {
    CurveAxis a;
    a.kind_ = Kind::Arc;
    a.center_ = center;
    a.radius_ = require_nonneg(radius);
    a.theta0_ = theta0;
    a.theta1_ = theta1;
    return a;
  }

  static CurveAxis segment(Complex p, Complex q) {
    CurveAxis a;
    a.kind_ = Kind::Segment;
    a.p_ = p;
    a.q_ = q;
    return a;
  }

  static CurveAxis sampled(std::vector<Complex> values, std::vector<Complex> derivatives) {
    if (values.size() < 2 || values.size() != derivatives.size())
      throw DomainError("CurveAxis: sampled tables need >= 2 matching entries");
    CurveAxis a;
    a.kind_ = Kind::Sampled;
    a.table_.values = std::move(values);
    a.table_.derivs = std::move(derivatives);
    return a;
  }

  Kind kind() const { return kind_; }
  bool closed() const { return kind_ == Kind::Circle; }
  double param_begin() const { return 0.0; }
  double param_end() const { return kind_ == Kind::Circle ? kTwoPi : 1.0; }

  Complex value(double t) const {
    switch (kind_) {
      case Kind::Circle:
        return center_ + radius_ * std::exp(Complex{0.0, t});
      case Kind::Arc: {
        const double th = theta0_ + (theta1_ - theta0_) * t;
        return center_ + radius_ * std::exp(Complex{0.0, th});
      }
      case Kind::Segment:
        return p_ + (q_ - p_) * t;
      case Kind::Sampled:
        return table_.value(t);
    }
    throw DomainError("CurveAxis: unhandled kind");
  }

  Complex derivative(double t) const {
    switch (kind_) {
      case Kind::Circle:
        return Complex{0.0, 1.0} * radius_ * std::exp(Complex{0.0, t});
      case Kind::Arc: {
        const double th = theta0_ + (theta1_ - theta0_) * t;
        return Complex{0.0, 1.0} * (theta1_ - theta0_) * radius_ * std::exp(Complex{0.0, th});
      }
      case Kind::Segment:
        return q_ - p_;
      case Kind::Sampled:
        return table_.derivative(t);
    }
    throw DomainError("CurveAxis: unhandled kind");
  }

  /// Length of this component, int |gamma'|; closed forms where available.
  double length() const {
    switch (kind_) {
      case Kind::Circle:
        return kTwoPi * radius_;
      case Kind::Arc:
        return std::abs(theta1_ - theta0_) * radius_;
      case Kind::Segment:
        return std::abs(q_ - p_);
      case Kind::Sampled: {
        // composite trapezoid on |gamma'| over the sample grid, refined 8x
        const std::size_t n = 8 * table_.segments();
        double s = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
          const double t = static_cast<double>(i) / static_cast<double>(n);
          const double w = (i == 0 || i == n) ? 0.5 : 1.0;
          s += w * std::abs(table_.derivative(t));
        }
        return s / static_cast<double>(n);
      }
    }
    throw DomainError("CurveAxis: unhandled kind");
  }

private:
  static double require_nonneg(double r) {
    if (r < 0.0 || !std::isfinite(r)) throw DomainError("CurveAxis: radius must be finite and >= 0");
    return r;
  }

  Kind kind_ = Kind::Circle;
  Complex center_{0.0, 0.0};
  double radius_ = 1.0;
  double theta0_ = 0.0;
  double theta1_ = kTwoPi;
  Complex p_{0.0, 0.0};
  Complex q_{1.0, 0.0};
  detail::HermiteTable table_;
};

/**
 * A tensor-product C1 curve in C^d: per-axis components gamma_k with
 * independent parameters, t -> (gamma_1(t_1), ..., gamma_d(t_d)).
 * l(gamma) is the product of the component lengths.
 */
class CurveC1 {
public:
  explicit CurveC1(std::vector<CurveAxis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw DomainError("CurveC1: dimension must be >= 1");
  }

  /// Product of circles around disc centers, the distinguished boundary curve.
  static CurveC1 boundary_of(const Polydisc& disc) {
    std::vector<CurveAxis> axes;
    for (std::size_t k = 0; k < disc.dim(); ++k)
      axes.push_back(CurveAxis::circle(disc.center()[k], disc.radii()[k]));
    return CurveC1(std::move(axes));
  }

  static CurveC1 unit_circle() { return CurveC1({CurveAxis::circle(Complex{0, 0}, 1.0)}); }

  static CurveC1 segment(Complex p, Complex q) { return CurveC1({CurveAxis::segment(p, q)}); }

  std::size_t dim() const { return axes_.size(); }
  const CurveAxis& axis(std::size_t k) const { return axes_[k]; }

  CPoint value(const std::vector<double>& t) const {
    if (t.size() != dim()) throw DomainError("CurveC1: parameter dimension mismatch");
    std::vector<Complex> z(dim());
    for (std::size_t k = 0; k < dim(); ++k) z[k] = axes_[k].value(t[k]);
    return CPoint(std::move(z));
  }

  double length() const {
    double l = 1.0;
    for (const auto& a : axes_) l *= a.length();
    return l;
  }

private:
  std::vector<CurveAxis> axes_;
};

/// Tensor sampling grid on the distinguished boundary of a polydisc, with
/// per-axis uniform trapezoidal weights 2*pi/N_k.
struct BoundaryGrid {
  Polydisc disc;
  std::vector<int> nodes;

  std::size_t size() const {
    std::size_t s = 1;
    for (int n : nodes) s *= static_cast<std::size_t>(n);
    return s;
  }

  double theta(std::size_t axis, std::size_t j) const {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(nodes[axis]);
  }

  Complex coord(std::size_t axis, std::size_t j) const {
    return disc.center()[axis] + disc.radii()[axis] * std::exp(Complex{0.0, theta(axis, j)});
  }

  double weight(std::size_t axis) const { return kTwoPi / static_cast<double>(nodes[axis]); }

  /// Multi-index of grid coordinates of the flat index (last axis fastest).
  std::vector<std::size_t> unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(nodes.size());
    for (std::size_t k = nodes.size(); k-- > 0;) {
      idx[k] = flat % static_cast<std::size_t>(nodes[k]);
      flat /= static_cast<std::size_t>(nodes[k]);
    }
    return idx;
  }

  CPoint point(const std::vector<std::size_t>& idx) const {
    std::vector<Complex> z(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) z[k] = coord(k, idx[k]);
    return CPoint(std::move(z));
  }

  CPoint point(std::size_t flat) const { return point(unflatten(flat)); }
};

/**
 * The tensor grid z_k = w_k + rho_k * exp(2*pi*i*j_k/N_k) on the
 * distinguished boundary, with per-axis trapezoidal weights 2*pi/N_k.
 * Rejects N_k < 4 or odd, and grids larger than grid_cap points.
 */
inline BoundaryGrid boundary_grid(const Polydisc& disc, std::vector<int> nodes,
                                  std::size_t grid_cap = 0) {
  if (grid_cap == 0) grid_cap = process_grid_cap();
  if (nodes.size() != disc.dim()) throw DomainError("boundary_grid: nodes/disc dimension mismatch");
  std::size_t total = 1;
  for (int n : nodes) {
    if (n < 4) throw DomainError("boundary_grid: need at least 4 nodes per axis");
    if (n % 2 != 0) throw DomainError("boundary_grid: node counts must be even");
    if (total > grid_cap / static_cast<std::size_t>(n))
      throw ResourceError("boundary_grid: grid size exceeds cap of " + std::to_string(grid_cap));
    total *= static_cast<std::size_t>(n);
  }
  return BoundaryGrid{disc, std::move(nodes)};
}

}  // namespace polydisc
