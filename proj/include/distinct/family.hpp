#ifndef DISTINCT_FAMILY_HPP
#define DISTINCT_FAMILY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "distinct/error.hpp"
#include "distinct/linalg.hpp"
#include "distinct/poly.hpp"

namespace distinct {

struct RealInterval {
  double a = 0.0;
  double b = 1.0;
  friend bool operator==(const RealInterval&, const RealInterval&) = default;
};

struct ComplexPlane {
  friend bool operator==(const ComplexPlane&, const ComplexPlane&) = default;
};

/// Parameter domain of a family: a closed real interval or all of C.
class Domain {
 public:
  Domain() : kind_(ComplexPlane{}) {}
  Domain(RealInterval interval) : kind_(interval) {  // NOLINT(google-explicit-constructor)
    require(std::isfinite(interval.a) && std::isfinite(interval.b) && interval.a < interval.b,
            "real interval requires finite a < b");
  }
  Domain(ComplexPlane plane) : kind_(plane) {}  // NOLINT(google-explicit-constructor)

  static Domain real_interval(double a, double b) { return Domain(RealInterval{a, b}); }
  static Domain complex_plane() { return Domain(ComplexPlane{}); }

  bool is_real_interval() const noexcept { return std::holds_alternative<RealInterval>(kind_); }
  const RealInterval& interval() const { return std::get<RealInterval>(kind_); }

  /// Slack used when deciding whether a computed real point lies in [a, b].
  double edge_slack() const { return is_real_interval() ? 1e-9 * (interval().b - interval().a) : 0.0; }

  /// Only the real part is checked for intervals; C contains everything.
  bool contains(Complex x) const {
    if (!is_real_interval()) return true;
    const auto& iv = interval();
    return x.real() >= iv.a - edge_slack() && x.real() <= iv.b + edge_slack();
  }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::variant<RealInterval, ComplexPlane> kind_;
};

/// F(x) = sum_k A_k x^k with all A_k of the same shape.
class MatrixPoly {
 public:
  MatrixPoly(std::vector<ComplexMatrix> coeffs, Domain domain) : coeffs_(std::move(coeffs)), domain_(domain) {
    require(!coeffs_.empty(), "matrix polynomial needs at least one coefficient");
    require(coeffs_.front().rows() > 0 && coeffs_.front().cols() > 0, "matrix dimensions must be positive");
    for (const auto& a : coeffs_) {
      require(a.rows() == coeffs_.front().rows() && a.cols() == coeffs_.front().cols(),
              "all coefficient matrices must share dimensions");
      require_finite(a, "coefficient matrix");
    }
  }

  /// (1 - t) A + t B on [0, 1].
  static MatrixPoly segment(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "segment endpoints must share dimensions");
    return MatrixPoly({a, b - a}, Domain::real_interval(0.0, 1.0));
  }

  Eigen::Index rows() const noexcept { return coeffs_.front().rows(); }
  Eigen::Index cols() const noexcept { return coeffs_.front().cols(); }
  bool is_square() const noexcept { return rows() == cols(); }
  /// p, the highest power (coefficients are kept even if numerically zero).
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<ComplexMatrix>& coeffs() const noexcept { return coeffs_; }
  const Domain& domain() const noexcept { return domain_; }

  /// Horner evaluation without the domain check; used at interpolation nodes.
  ComplexMatrix operator()(Complex x) const {
    ComplexMatrix acc = coeffs_.back();
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

 private:
  std::vector<ComplexMatrix> coeffs_;
  Domain domain_;
};

inline ComplexMatrix eval_family(const MatrixPoly& f, Complex x) {
  require(is_finite(x), "parameter is not finite");
  if (!f.domain().contains(x)) throw PreconditionError("parameter outside domain");
  return f(x);
}

/// p_x(y) = y^n + sum_{k=1..n} q_k(x) y^{n-k}.
class BivariateCharPoly {
 public:
  BivariateCharPoly(std::vector<Poly> q, int entry_degree) : q_(std::move(q)), entry_degree_(entry_degree) {}

  int n() const noexcept { return static_cast<int>(q_.size()); }
  /// q_k for k = 1..n.
  const Poly& coeff(int k) const { return q_.at(static_cast<std::size_t>(k - 1)); }
  /// Per-entry degree bound d of the source matrix; deg q_k <= k d.
  int entry_degree() const noexcept { return entry_degree_; }

  /// The monic polynomial in y at parameter x.
  Poly at(Complex x) const {
    std::vector<Complex> v(q_.size() + 1);
    v[q_.size()] = 1.0;
    for (std::size_t k = 1; k <= q_.size(); ++k) v[q_.size() - k] = q_[k - 1](x);
    return Poly(std::move(v));
  }

 private:
  std::vector<Poly> q_;
  int entry_degree_;
};

namespace detail {

/// Interpolation circle: nodes c + r e^{2 pi i j / N}.
///
/// For an interval the circle is centered at the midpoint with radius equal to
/// the half-width, so every node has its real part inside [a, b] and the
/// interval maps onto [-1, 1] in the local variable u = (x - c) / r.
struct Circle {
  Complex center{};
  double radius = 1.0;

  Complex to_global(Complex u) const { return center + radius * u; }
  Complex to_local(Complex x) const { return (x - center) / radius; }
};

inline Circle interpolation_circle(const Domain& d) {
  if (!d.is_real_interval()) return {};
  const auto& iv = d.interval();
  return {Complex(0.5 * (iv.a + iv.b)), 0.5 * (iv.b - iv.a)};
}

inline std::vector<Complex> circle_nodes(const Circle& c, int count) {
  std::vector<Complex> nodes(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j)
    nodes[static_cast<std::size_t>(j)] = c.to_global(std::polar(1.0, 2.0 * std::numbers::pi * j / count));
  return nodes;
}

/// Coefficients in u of the degree < N polynomial through values at the N-th roots of unity.
inline std::vector<Complex> dft_interpolate(std::span<const Complex> values) {
  const std::size_t count = values.size();
  std::vector<Complex> c(count);
  for (std::size_t k = 0; k < count; ++k) {
    Complex acc{};
    for (std::size_t j = 0; j < count; ++j)
      acc += values[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((j * k) % count) / count);
    c[k] = acc / static_cast<double>(count);
  }
  return c;
}

/// Zero out coefficients below floor; they are rounding noise of the samples.
inline std::vector<Complex> drop_noise(std::vector<Complex> c, double floor) {
  for (auto& z : c)
    if (std::abs(z) <= floor) z = Complex{};
  return c;
}

inline constexpr double kNoiseFactor = 64.0 * std::numeric_limits<double>::epsilon();

/// p(u) rewritten as a polynomial in x = c + r u.
inline Poly to_global_variable(const Poly& in_u, const Circle& circle) {
  if (circle.center == Complex{} && circle.radius == 1.0) return in_u;
  const Poly u_of_x{-circle.center / circle.radius, Complex(1.0 / circle.radius)};
  Poly acc;
  for (int k = in_u.degree(); k >= 0; --k) acc = acc * u_of_x + Poly::constant(in_u[static_cast<std::size_t>(k)]);
  return acc;
}

}  // namespace detail

/// Coefficient polynomials of det(yI - F(x)) by evaluation and interpolation
/// at n p + 1 nodes.
inline BivariateCharPoly char_poly_family(const MatrixPoly& f) {
  require(f.is_square(), "char_poly_family requires a square family");
  const int n = static_cast<int>(f.rows());
  const int p = f.degree();
  const auto circle = detail::interpolation_circle(f.domain());
  const auto nodes = detail::circle_nodes(circle, n * p + 1);
  std::vector<std::vector<Complex>> samples(static_cast<std::size_t>(n), std::vector<Complex>(nodes.size()));
  double rho = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const ComplexMatrix m = f(nodes[j]);
    rho = std::max(rho, frobenius_norm(m));
    const Poly cp = numeric_char_poly(m);
    for (int k = 1; k <= n; ++k) samples[static_cast<std::size_t>(k - 1)][j] = cp[static_cast<std::size_t>(n - k)];
  }
  std::vector<Poly> q;
  q.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    auto c = detail::dft_interpolate(samples[static_cast<std::size_t>(k - 1)]);
    c.resize(std::min(c.size(), static_cast<std::size_t>(k * p + 1)));  // deg q_k <= k p
    c = detail::drop_noise(std::move(c), detail::kNoiseFactor * std::pow(rho, k));
    q.push_back(detail::to_global_variable(Poly(std::move(c)), circle));
  }
  return BivariateCharPoly(std::move(q), p);
}

/// G(x) = conj(F)(x)^T F(x), which equals F(x)^* F(x) for real x.
inline MatrixPoly gram_family(const MatrixPoly& f) {
  if (!f.domain().is_real_interval()) throw PreconditionError("Gram family defined only over real domains");
  const int p = f.degree();
  const Eigen::Index n = f.cols();
  std::vector<ComplexMatrix> g(static_cast<std::size_t>(2 * p + 1), ComplexMatrix::Zero(n, n));
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= p; ++j)
      g[static_cast<std::size_t>(i + j)] += f.coeffs()[static_cast<std::size_t>(i)].adjoint() *
                                            f.coeffs()[static_cast<std::size_t>(j)];
  return MatrixPoly(std::move(g), f.domain());
}

/// det F(x) as a polynomial of degree <= n p.
inline Poly det_family(const MatrixPoly& f) {
  require(f.is_square(), "det_family requires a square family");
  const int n = static_cast<int>(f.rows());
  const auto circle = detail::interpolation_circle(f.domain());
  const auto nodes = detail::circle_nodes(circle, n * f.degree() + 1);
  std::vector<Complex> values(nodes.size());
  double scale = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const ComplexMatrix m = f(nodes[j]);
    scale = std::max(scale, std::pow(frobenius_norm(m), n));
    values[j] = determinant(m);
  }
  auto c = detail::drop_noise(detail::dft_interpolate(values), detail::kNoiseFactor * scale);
  return detail::to_global_variable(Poly(std::move(c)), circle);
}

}  // namespace distinct

#endif  // DISTINCT_FAMILY_HPP
