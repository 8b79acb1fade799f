// Random inputs and independent oracles shared by the unit and acceptance suites.
#ifndef DISTINCT_TESTS_SUPPORT_HPP
#define DISTINCT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "distinct/distinct.hpp"

namespace distinct::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }

  /// Uniform in the closed unit disk.
  Complex disk() { return std::polar(std::sqrt(uniform()), 2.0 * std::numbers::pi * uniform()); }

  Poly poly(int degree) {
    std::vector<Complex> c(static_cast<std::size_t>(degree + 1));
    for (auto& z : c) z = disk();
    if (std::abs(c.back()) < 0.1) c.back() = 1.0;
    return Poly(std::move(c));
  }

  ComplexMatrix matrix(Eigen::Index m, Eigen::Index n) {
    ComplexMatrix a(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = disk();
    return a;
  }

  ComplexMatrix real_matrix(Eigen::Index m, Eigen::Index n) {
    ComplexMatrix a(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = uniform(-1.0, 1.0);
    return a;
  }

  MatrixPoly family(Eigen::Index m, Eigen::Index n, int p, const Domain& domain) {
    std::vector<ComplexMatrix> c;
    for (int k = 0; k <= p; ++k) c.push_back(matrix(m, n));
    return MatrixPoly(std::move(c), domain);
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline double rel_err(Complex got, Complex want, double floor = 1.0) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

/// prod_{i<j} (r_i - r_j)^2 times the sign making it equal Res(f, f') for monic f.
/// Res(f, f') = (-1)^{n(n-1)/2} prod_{i<j} (r_i - r_j)^2.
inline Complex disc_from_roots(const std::vector<Complex>& r) {
  Complex d = 1.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) d *= (r[i] - r[j]) * (r[i] - r[j]);
  const std::size_t n = r.size();
  return (n * (n - 1) / 2) % 2 == 0 ? d : -d;
}

/// Polynomial in y whose coefficients are polynomials in x (ascending in y).
using Bivariate = std::vector<Poly>;

inline Bivariate bi_mul(const Bivariate& a, const Bivariate& b) {
  Bivariate out(a.size() + b.size() - 1, Poly());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

inline Bivariate bi_add(const Bivariate& a, const Bivariate& b, double sign) {
  Bivariate out(std::max(a.size(), b.size()), Poly());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] + Complex(sign) * b[i];
  return out;
}

/// det of a matrix of bivariate entries by Laplace expansion along the first row.
inline Bivariate bi_det(const std::vector<std::vector<Bivariate>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Bivariate acc{Poly()};
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Bivariate>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Bivariate> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    acc = bi_add(acc, bi_mul(m[0][c], bi_det(minor)), c % 2 == 0 ? 1.0 : -1.0);
  }
  return acc;
}

/// det(yI - F(x)) by symbolic cofactor expansion: y^n + sum q_k(x) y^{n-k}.
/// Returns q_1..q_n.
inline std::vector<Poly> cofactor_char_poly(const MatrixPoly& f) {
  const auto n = static_cast<std::size_t>(f.rows());
  std::vector<std::vector<Bivariate>> m(n, std::vector<Bivariate>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Complex> entry;
      for (const auto& a : f.coeffs()) entry.push_back(-a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      m[i][j] = {Poly(std::move(entry))};
      if (i == j) m[i][j].push_back(Poly::constant(1.0));
    }
  const Bivariate d = bi_det(m);
  std::vector<Poly> q;
  for (std::size_t k = 1; k <= n; ++k) q.push_back(n - k < d.size() ? d[n - k] : Poly());
  return q;
}

/// Largest coefficient difference relative to the largest coefficient of want.
inline double poly_rel_diff(const Poly& got, const Poly& want) {
  const std::size_t len = std::max(got.coeffs().size(), want.coeffs().size());
  double diff = 0.0;
  for (std::size_t k = 0; k < len; ++k) diff = std::max(diff, std::abs(got[k] - want[k]));
  return diff / std::max(want.max_abs_coeff(), 1e-300);
}

/// Exhaustive search for an injective column -> row map along 1-cells,
/// optionally with row and column `skip` removed.
inline bool brute_force_diagonal(const Pattern& p, std::optional<std::size_t> skip = std::nullopt) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < p.cols(); ++j)
    if (skip != j) cols.push_back(j);
  std::vector<bool> used(p.rows(), false);
  auto rec = [&](auto&& self, std::size_t idx) -> bool {
    if (idx == cols.size()) return true;
    for (std::size_t r = 0; r < p.rows(); ++r) {
      if (used[r] || skip == r || !p(r, cols[idx])) continue;
      used[r] = true;
      if (self(self, idx + 1)) return true;
      used[r] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

inline Pattern pattern_from_mask(std::size_t m, std::size_t n, std::uint32_t mask) {
  Pattern p(m, n);
  for (std::size_t c = 0; c < m * n; ++c) p.set(c / n, c % n, ((mask >> c) & 1U) != 0);
  return p;
}

/// Minimum eigenvalue gap near t refined by dense sampling then golden-section search.
template <class Gap>
double refined_min_gap(Gap gap, double lo, double hi) {
  double best_t = lo;
  double best = gap(lo);
  constexpr int kSamples = 200;
  for (int i = 1; i <= kSamples; ++i) {
    const double t = lo + (hi - lo) * i / kSamples;
    const double g = gap(t);
    if (g < best) {
      best = g;
      best_t = t;
    }
  }
  const double step = (hi - lo) / kSamples;
  double a = std::max(lo, best_t - step);
  double b = std::min(hi, best_t + step);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 80; ++it) {
    const double c = b - phi * (b - a);
    const double d = a + phi * (b - a);
    if (gap(c) < gap(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return std::min(best, gap(0.5 * (a + b)));
}

}  // namespace distinct::testing

#endif  // DISTINCT_TESTS_SUPPORT_HPP
