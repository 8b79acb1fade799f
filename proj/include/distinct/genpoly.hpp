#ifndef DISTINCT_GENPOLY_HPP
#define DISTINCT_GENPOLY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "distinct/error.hpp"
#include "distinct/family.hpp"
#include "distinct/linalg.hpp"
#include "distinct/locus.hpp"
#include "distinct/perturb.hpp"
#include "distinct/poly.hpp"
#include "distinct/resultant.hpp"

namespace distinct {

struct EntryPosition {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const EntryPosition&, const EntryPosition&) = default;
};

struct EntryPower {
  EntryPosition position;
  unsigned exponent = 1;
  friend bool operator==(const EntryPower&, const EntryPower&) = default;
};

/// coefficient * prod a_{row,col}^exponent
struct EntryMonomial {
  Complex coefficient{1.0};
  std::vector<EntryPower> powers;

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& p : powers) d += p.exponent;
    return d;
  }

  Complex evaluate(const ComplexMatrix& a) const {
    Complex v = coefficient;
    for (const auto& p : powers) {
      const Complex e = a(static_cast<Eigen::Index>(p.position.row), static_cast<Eigen::Index>(p.position.col));
      for (unsigned k = 0; k < p.exponent; ++k) v *= e;
    }
    return v;
  }

  /// Same product with every factor replaced by its magnitude.
  double abs_evaluate(const ComplexMatrix& a) const {
    double v = std::abs(coefficient);
    for (const auto& p : powers)
      v *= std::pow(std::abs(a(static_cast<Eigen::Index>(p.position.row), static_cast<Eigen::Index>(p.position.col))),
                    p.exponent);
    return v;
  }

  friend bool operator==(const EntryMonomial&, const EntryMonomial&) = default;
};

/// A polynomial function of the matrix entries.
struct CoefficientMap {
  std::vector<EntryMonomial> monomials;

  Complex evaluate(const ComplexMatrix& a) const {
    Complex v{};
    for (const auto& m : monomials) v += m.evaluate(a);
    return v;
  }
  double abs_evaluate(const ComplexMatrix& a) const {
    double v = 0.0;
    for (const auto& m : monomials) v += m.abs_evaluate(a);
    return v;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& m : monomials) d = std::max(d, m.total_degree());
    return d;
  }

  friend bool operator==(const CoefficientMap&, const CoefficientMap&) = default;
};

/// p_x(A) = x^k + sum_{i=1..k} q_i(A) x^{i-1} for m x n matrices A.
///
/// Membership in the class also requires that the roots of p_x(A) range over
/// every unordered k-tuple as A varies. That is not checked; it is the
/// caller's responsibility. coordinate() and charpoly() satisfy it.
class GenPolyClass {
 public:
  GenPolyClass(std::size_t m, std::size_t n, std::vector<CoefficientMap> q) : m_(m), n_(n), q_(std::move(q)) {
    require(m > 0 && n > 0, "class matrix dimensions must be positive");
    require(!q_.empty(), "class degree k must be at least 1");
    for (const auto& map : q_)
      for (const auto& mono : map.monomials) {
        require(is_finite(mono.coefficient), "monomial coefficient is not finite");
        for (const auto& p : mono.powers)
          require(p.position.row < m && p.position.col < n, "monomial references an entry outside the matrix");
      }
  }

  /// The first k row-major coordinates of A as coefficients, the first one on
  /// x^{k-1}: for k = 2, p_x(A) = x^2 + a_11 x + a_12.
  static GenPolyClass coordinate(std::size_t k, std::size_t m, std::size_t n) {
    require(k >= 1 && k <= m * n, "coordinate class needs 1 <= k <= m n");
    std::vector<CoefficientMap> q(k);
    for (std::size_t c = 0; c < k; ++c) q[k - 1 - c].monomials.push_back({Complex(1.0), {{{c / n, c % n}, 1}}});
    return GenPolyClass(m, n, std::move(q));
  }

  /// det(xI - A) written as sums of signed principal-minor monomials.
  static GenPolyClass charpoly(std::size_t n) {
    require(n >= 1, "charpoly class needs n >= 1");
    std::vector<CoefficientMap> q(n);
    // Coefficient of x^{n-i} is (-1)^i times the sum of principal i x i minors.
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t s = 0; s < n; ++s)
        if (mask & (1u << s)) subset.push_back(s);
      const std::size_t i = subset.size();
      std::vector<std::size_t> perm(i);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::size_t inversions = 0;
        for (std::size_t a = 0; a < i; ++a)
          for (std::size_t b = a + 1; b < i; ++b) inversions += perm[a] > perm[b] ? 1 : 0;
        const double sign = ((inversions + i) % 2 == 0) ? 1.0 : -1.0;
        EntryMonomial mono{Complex(sign), {}};
        for (std::size_t a = 0; a < i; ++a) mono.powers.push_back({{subset[a], subset[perm[a]]}, 1});
        q[n - i].monomials.push_back(std::move(mono));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return GenPolyClass(n, n, std::move(q));
  }

  std::size_t k() const noexcept { return q_.size(); }
  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }
  /// q_i for i = 1..k; multiplies x^{i-1}.
  const CoefficientMap& q(std::size_t i) const { return q_.at(i - 1); }
  const std::vector<CoefficientMap>& coefficient_maps() const noexcept { return q_; }

  unsigned max_total_degree() const {
    unsigned d = 0;
    for (const auto& map : q_) d = std::max(d, map.total_degree());
    return d;
  }

  friend bool operator==(const GenPolyClass&, const GenPolyClass&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<CoefficientMap> q_;
};

inline void require_matching_shape(const GenPolyClass& p, const ComplexMatrix& a) {
  require(static_cast<std::size_t>(a.rows()) == p.rows() && static_cast<std::size_t>(a.cols()) == p.cols(),
          "matrix dimensions do not match the polynomial class");
}

/// The monic degree-k polynomial p_x(A).
inline Poly eval_genpoly(const GenPolyClass& p, const ComplexMatrix& a) {
  require_matching_shape(p, a);
  std::vector<Complex> c(p.k() + 1);
  for (std::size_t i = 1; i <= p.k(); ++i) c[i - 1] = p.q(i).evaluate(a);
  c[p.k()] = 1.0;
  return Poly(std::move(c));
}

/// The zeros of A with respect to p_x.
inline RootSet zeros_of(const GenPolyClass& p, const ComplexMatrix& a, double tol = kDefaultTol) {
  return roots(eval_genpoly(p, a), tol);
}

namespace detail {

/// rho = max_i (|q|-evaluated coefficient of x^{k-i})^{1/i}: the magnitude the
/// zeros are computed against.
inline double genpoly_magnitude(const GenPolyClass& p, const ComplexMatrix& a) {
  double rho = 0.0;
  const std::size_t k = p.k();
  for (std::size_t i = 1; i <= k; ++i) rho = std::max(rho, std::pow(p.q(k - i + 1).abs_evaluate(a), 1.0 / i));
  return rho;
}

inline std::vector<Complex> raw_zeros(const Poly& monic) {
  return monic.degree() < 1 ? std::vector<Complex>{} : companion_eigenvalues(monic);
}

inline Sample genpoly_discriminant_sample(const GenPolyClass& p, const ComplexMatrix& a) {
  const Poly poly = eval_genpoly(p, a);
  return {disc(poly), discriminant_scale(raw_zeros(poly), genpoly_magnitude(p, a))};
}

inline bool has_distinct_zeros(const GenPolyClass& p, const ComplexMatrix& a, double rel) {
  if (p.k() < 2) return true;
  const auto z = raw_zeros(eval_genpoly(p, a));
  return min_pairwise_gap(std::span<const Complex>(z)) >
         rel * std::max(genpoly_magnitude(p, a), std::numeric_limits<double>::min());
}

}  // namespace detail

/// Parameters where F(x) has a repeated zero with respect to p_x.
///
/// Each q_i(F(x)) is a polynomial in x of degree <= deg(q_i) p, so
/// Res(p_x(F(x)), p_x'(F(x))) has degree <= (2k - 1) max_i deg(q_i) p.
inline Locus repeated_zero_locus(const MatrixPoly& f, const GenPolyClass& p, double tol = kDefaultTol,
                                 std::uint64_t seed = kDefaultSeed) {
  require(p.k() >= 2, "distinctness vacuous for k < 2");
  require(static_cast<std::size_t>(f.rows()) == p.rows() && static_cast<std::size_t>(f.cols()) == p.cols(),
          "family dimensions do not match the polynomial class");
  const int bound = static_cast<int>(2 * p.k() - 1) * static_cast<int>(p.max_total_degree()) * f.degree();
  return detail::classify_zero_set([&](Complex x) { return detail::genpoly_discriminant_sample(p, f(x)); }, bound,
                                   f.domain(), tol, seed);
}

/// Safe-radius construction on (1 - t) A + t B with target "distinct zeros of p_x".
inline SegmentReport perturb_to_distinct_zeros(const ComplexMatrix& a, const ComplexMatrix& b, const GenPolyClass& p,
                                               double tol = kDefaultTol, std::uint64_t seed = kDefaultSeed) {
  detail::require_same_shape(a, b);
  require_matching_shape(p, a);
  auto holds = [&](const ComplexMatrix& m, double rel) { return detail::has_distinct_zeros(p, m, rel); };
  if (a == b && !holds(a, kPreconditionGap)) throw PreconditionError("degenerate segment");
  auto loci = [&](const MatrixPoly& path) {
    std::vector<Locus> out;
    if (p.k() >= 2) out.push_back(repeated_zero_locus(path, p, tol, seed));
    return out;
  };
  return detail::safe_point_on_path(MatrixPoly::segment(a, b), holds, loci, "distinct zeros");
}

}  // namespace distinct

#endif  // DISTINCT_GENPOLY_HPP
