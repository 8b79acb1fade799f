#ifndef DISTINCT_LINALG_HPP
#define DISTINCT_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "distinct/error.hpp"
#include "distinct/poly.hpp"

namespace distinct {

/// Dense m x n complex matrix.
using ComplexMatrix = Eigen::MatrixXcd;

inline bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!is_finite(a(i, j))) return false;
  return true;
}

inline void require_finite(const ComplexMatrix& a, const char* what) {
  require(all_finite(a), std::string(what) + " has non-finite entries");
}

inline double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

inline std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
  require(a.rows() == a.cols(), "eigenvalues: matrix must be square");
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Singular values in descending order; min(m, n) of them.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return {};
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

/// Smallest |z_i - z_j| over i != j; +inf for fewer than two values.
inline double min_pairwise_gap(std::span<const Complex> z) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) gap = std::min(gap, std::abs(z[i] - z[j]));
  return gap;
}

inline double min_pairwise_gap(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < s.size(); ++i) gap = std::min(gap, s[i] - s[i - 1]);
  return gap;
}

inline double min_eigen_gap(const ComplexMatrix& a) { return min_pairwise_gap(std::span<const Complex>(eigenvalues(a))); }

inline double min_singular_gap(const ComplexMatrix& a) {
  return min_pairwise_gap(std::span<const double>(singular_values(a)));
}

/// det(yI - A) expanded from the computed eigenvalues.
inline Poly numeric_char_poly(const ComplexMatrix& a) {
  const auto ev = eigenvalues(a);
  return poly_from_roots(ev);
}

inline Complex determinant(const ComplexMatrix& a) {
  require(a.rows() == a.cols(), "determinant: matrix must be square");
  if (a.rows() == 0) return Complex(1.0);
  return a.partialPivLu().determinant();
}

/// Conjugate transpose times the matrix.
inline ComplexMatrix gram(const ComplexMatrix& a) { return a.adjoint() * a; }

}  // namespace distinct

#endif  // DISTINCT_LINALG_HPP
