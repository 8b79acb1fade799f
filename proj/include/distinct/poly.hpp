#ifndef DISTINCT_POLY_HPP
#define DISTINCT_POLY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "distinct/error.hpp"

namespace distinct {

using Complex = std::complex<double>;

/// Default relative tolerance for "is this zero" decisions.
inline constexpr double kDefaultTol = 1e-9;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Univariate polynomial with complex coefficients, stored ascending by power.
///
/// The zero polynomial has no coefficients. Construction strips exact trailing
/// zeros; use normalize() to strip coefficients that are negligible relative
/// to the largest one.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) require(is_finite(c), "polynomial coefficient is not finite");
    trim_exact();
  }
  Poly(std::initializer_list<Complex> coeffs) : Poly(std::vector<Complex>(coeffs)) {}

  static Poly constant(Complex c) { return Poly({c}); }
  /// c * x^k
  static Poly monomial(Complex c, std::size_t k) {
    std::vector<Complex> v(k + 1, Complex{});
    v[k] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  Complex operator[](std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }
  Complex leading() const noexcept { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

  double max_abs_coeff() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Horner evaluation.
  Complex operator()(Complex x) const noexcept {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Sum of |a_k| |x|^k; the natural magnitude against which p(x) is judged.
  double abs_sum(Complex x) const noexcept {
    const double r = std::abs(x);
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
  }

  friend Poly operator+(const Poly& f, const Poly& g) {
    std::vector<Complex> v(std::max(f.size(), g.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f[k] + g[k];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& f, const Poly& g) {
    std::vector<Complex> v(std::max(f.size(), g.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f[k] - g[k];
    return Poly(std::move(v));
  }
  friend Poly operator*(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) return {};
    std::vector<Complex> v(f.size() + g.size() - 1);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) v[i + j] += f.coeffs_[i] * g.coeffs_[j];
    return Poly(std::move(v));
  }
  friend Poly operator*(Complex c, const Poly& f) {
    std::vector<Complex> v(f.coeffs_);
    for (auto& x : v) x *= c;
    return Poly(std::move(v));
  }
  Poly operator-() const { return Complex(-1.0) * *this; }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim_exact() {
    while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
  }

  std::vector<Complex> coeffs_;
};

/// Drop trailing coefficients with |c| <= tol * max|coeffs|.
inline Poly normalize(const Poly& p, double tol) {
  require(tol >= 0.0, "normalize: tolerance must be nonnegative");
  const double cutoff = tol * p.max_abs_coeff();
  std::vector<Complex> v(p.coeffs().begin(), p.coeffs().end());
  while (!v.empty() && std::abs(v.back()) <= cutoff) v.pop_back();
  return Poly(std::move(v));
}

inline Poly derivative(const Poly& p) {
  if (p.degree() < 1) return {};
  std::vector<Complex> v(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) v[k - 1] = static_cast<double>(k) * p[k];
  return Poly(std::move(v));
}

inline Complex evaluate(const Poly& p, Complex x) { return p(x); }

/// prod_i (x - r_i)
inline Poly poly_from_roots(std::span<const Complex> roots) {
  std::vector<Complex> v{Complex(1.0)};
  for (const auto& r : roots) {
    v.push_back(Complex{});
    for (std::size_t k = v.size() - 1; k > 0; --k) v[k] = v[k - 1] - r * v[k];
    v[0] = -r * v[0];
  }
  return Poly(std::move(v));
}

/// |p(x)| / (max|a_k| sum |x|^k): the smallest perturbation, relative to the
/// largest coefficient, that makes x an exact root.
inline double backward_error(const Poly& p, Complex x) {
  const double r = std::abs(x);
  double powers = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) powers = powers * r + 1.0;
  const double denom = p.max_abs_coeff() * powers;
  return denom == 0.0 ? 0.0 : std::abs(p(x)) / denom;
}

struct Root {
  Complex value;
  int multiplicity = 1;
};

/// Multiset of roots; clustered roots carry their multiplicity.
class RootSet {
 public:
  RootSet() = default;
  explicit RootSet(std::vector<Root> roots) : roots_(std::move(roots)) {}

  /// Cardinality with multiplicity.
  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (const auto& r : roots_) n += static_cast<std::size_t>(r.multiplicity);
    return n;
  }
  std::span<const Root> distinct() const noexcept { return roots_; }

  /// Each root repeated by its multiplicity.
  std::vector<Complex> values() const {
    std::vector<Complex> out;
    for (const auto& r : roots_) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.value);
    return out;
  }

  bool has_repeated() const noexcept {
    return std::any_of(roots_.begin(), roots_.end(), [](const Root& r) { return r.multiplicity > 1; });
  }

 private:
  std::vector<Root> roots_;
};

namespace detail {

/// Backward-error threshold for accepting a root cluster as one multiple root.
inline constexpr double kClusterBackwardError = 1e-12;

inline double l1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

/// Parlett-Reinsch diagonal balancing with radix 2; similarity-preserving.
inline void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += l1(a(j, i));
        r += l1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / 2.0;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c >= g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

inline std::vector<Complex> companion_eigenvalues(const Poly& p) {
  const int n = p.degree();
  const Complex lead = p.leading();
  if (n == 1) return {-p[0] / lead};
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p[static_cast<std::size_t>(i)] / lead;
  balance(c);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion eigenvalue iteration did not converge");
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

/// Newton iteration on q from z, keeping the iterate with the smallest |q|.
inline Complex polish(const Poly& q, const Poly& dq, Complex z, double max_step) {
  Complex best = z;
  double best_val = std::abs(q(z));
  for (int it = 0; it < 8 && best_val > 0.0; ++it) {
    const Complex d = dq(z);
    if (d == Complex{}) break;
    Complex step = q(z) / d;
    if (!is_finite(step) || std::abs(step) > max_step) break;
    z -= step;
    const double v = std::abs(q(z));
    if (v < best_val) {
      best_val = v;
      best = z;
    } else {
      break;
    }
  }
  return best;
}

class RootClusterer {
 public:
  RootClusterer(const Poly& p, std::vector<Complex> raw) : raw_(std::move(raw)) {
    derivs_.push_back(p);
    for (int j = 0; j < p.degree(); ++j) derivs_.push_back(derivative(derivs_.back()));
  }

  std::vector<Root> run() {
    std::vector<std::size_t> all(raw_.size());
    std::iota(all.begin(), all.end(), 0);
    double diameter = 0.0, radius = 1.0;
    for (std::size_t i = 0; i < raw_.size(); ++i) {
      radius = std::max(radius, std::abs(raw_[i]));
      for (std::size_t j = i + 1; j < raw_.size(); ++j) diameter = std::max(diameter, std::abs(raw_[i] - raw_[j]));
    }
    floor_ = 1e-16 * radius;
    split(all, 2.0 * diameter + 1.0);
    return std::move(out_);
  }

 private:
  bool is_multiple_root(Complex z, std::size_t k) const {
    for (std::size_t j = 0; j < k; ++j)
      if (backward_error(derivs_[j], z) > kClusterBackwardError) return false;
    return true;
  }

  std::vector<std::vector<std::size_t>> components(const std::vector<std::size_t>& idx, double theta) const {
    std::vector<int> label(idx.size(), -1);
    int next = 0;
    for (std::size_t s = 0; s < idx.size(); ++s) {
      if (label[s] >= 0) continue;
      label[s] = next;
      std::vector<std::size_t> stack{s};
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < idx.size(); ++v)
          if (label[v] < 0 && std::abs(raw_[idx[u]] - raw_[idx[v]]) <= theta) {
            label[v] = next;
            stack.push_back(v);
          }
      }
      ++next;
    }
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(next));
    for (std::size_t s = 0; s < idx.size(); ++s) out[static_cast<std::size_t>(label[s])].push_back(idx[s]);
    return out;
  }

  double nearest_other(Complex z, const std::vector<std::size_t>& group) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < raw_.size(); ++i) {
      if (std::find(group.begin(), group.end(), i) != group.end()) continue;
      d = std::min(d, std::abs(raw_[i] - z));
    }
    return d;
  }

  void emit_simple(std::size_t i) {
    const double step = std::isfinite(nearest_other(raw_[i], {i})) ? 0.25 * nearest_other(raw_[i], {i})
                                                                     : std::numeric_limits<double>::infinity();
    out_.push_back({polish(derivs_[0], derivs_[1], raw_[i], step), 1});
  }

  void emit_cluster(const std::vector<std::size_t>& group, Complex centroid) {
    const std::size_t k = group.size();
    const double step = 0.25 * nearest_other(centroid, group);
    // p^(k-1) has a simple root at a k-fold root of p.
    Complex z = polish(derivs_[k - 1], derivs_[k], centroid, std::isfinite(step) ? step : 1.0);
    if (!is_multiple_root(z, k)) z = centroid;
    out_.push_back({z, static_cast<int>(k)});
  }

  void split(const std::vector<std::size_t>& group, double theta) {
    if (group.size() == 1) {
      emit_simple(group.front());
      return;
    }
    Complex centroid{};
    for (auto i : group) centroid += raw_[i];
    centroid /= static_cast<double>(group.size());
    if (is_multiple_root(centroid, group.size())) {
      emit_cluster(group, centroid);
      return;
    }
    while (theta > floor_) {
      theta *= 0.5;
      auto comps = components(group, theta);
      if (comps.size() > 1) {
        for (const auto& c : comps) split(c, theta);
        return;
      }
    }
    for (auto i : group) emit_simple(i);
  }

  std::vector<Complex> raw_;
  std::vector<Poly> derivs_;
  std::vector<Root> out_;
  double floor_ = 0.0;
};

}  // namespace detail

/// All complex roots of p with multiplicity.
///
/// Trailing coefficients below tol * max|coeffs| are treated as zero first.
/// Roots come from the balanced companion matrix; nearby roots that jointly
/// behave like one multiple root (small backward error of p, p', ... at their
/// centroid) are merged, and every reported value is Newton-polished.
inline RootSet roots(const Poly& p, double tol = kDefaultTol) {
  const Poly q = normalize(p, tol);
  if (q.degree() < 1) throw PreconditionError("no roots defined for a constant or zero polynomial");
  // Factor out exact zero roots so they are reported exactly.
  std::size_t zeros = 0;
  while (q[zeros] == Complex{}) ++zeros;
  std::vector<Root> out;
  if (zeros > 0) out.push_back({Complex{}, static_cast<int>(zeros)});
  if (static_cast<std::size_t>(q.degree()) > zeros) {
    const Poly rest(std::vector<Complex>(q.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros), q.coeffs().end()));
    auto clustered = detail::RootClusterer(rest, detail::companion_eigenvalues(rest)).run();
    out.insert(out.end(), clustered.begin(), clustered.end());
  }
  return RootSet(std::move(out));
}

}  // namespace distinct

#endif  // DISTINCT_POLY_HPP
