#ifndef DISTINCT_RESULTANT_HPP
#define DISTINCT_RESULTANT_HPP

#include <algorithm>
#include <cmath>
#include <span>

#include "distinct/error.hpp"
#include "distinct/linalg.hpp"
#include "distinct/poly.hpp"

namespace distinct {

/// The (deg f + deg g) square coefficient-shift matrix of two polynomials.
///
/// Rows 0..deg g - 1 hold the coefficients of f, highest power first, each row
/// shifted one column to the right of the previous; the remaining deg f rows
/// hold g in the same way.
class SylvesterMatrix {
 public:
  SylvesterMatrix(const Poly& f, const Poly& g) : n_(f.degree()), m_(g.degree()) {
    if (n_ < 1 || m_ < 1) throw PreconditionError("resultant undefined for constants");
    const int size = n_ + m_;
    entries_ = ComplexMatrix::Zero(size, size);
    for (int row = 0; row < m_; ++row)
      for (int k = 0; k <= n_; ++k) entries_(row, row + k) = f[static_cast<std::size_t>(n_ - k)];
    for (int row = 0; row < n_; ++row)
      for (int k = 0; k <= m_; ++k) entries_(m_ + row, row + k) = g[static_cast<std::size_t>(m_ - k)];
  }

  const ComplexMatrix& entries() const noexcept { return entries_; }
  int deg_f() const noexcept { return n_; }
  int deg_g() const noexcept { return m_; }
  Eigen::Index dimension() const noexcept { return entries_.rows(); }

  /// Product of the per-row maximum magnitudes: an upper bound for |det|
  /// that makes zero verdicts scale invariant.
  double row_scale() const {
    double s = 1.0;
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) s *= entries_.row(i).cwiseAbs().maxCoeff();
    return s;
  }

 private:
  int n_;
  int m_;
  ComplexMatrix entries_;
};

inline SylvesterMatrix sylvester(const Poly& f, const Poly& g) { return SylvesterMatrix(f, g); }

/// Determinant of the Sylvester matrix, by LU with partial pivoting.
inline Complex resultant(const SylvesterMatrix& s) { return s.entries().partialPivLu().determinant(); }

inline Complex resultant(const Poly& f, const Poly& g) { return resultant(sylvester(f, g)); }

/// |Res| <= tol * row_scale: the two polynomials share a root at this tolerance.
inline bool is_zero_resultant(Complex value, const SylvesterMatrix& s, double tol = kDefaultTol) {
  return std::abs(value) <= tol * s.row_scale();
}

/// Res(f, f'); zero exactly when f has a repeated root.
inline Complex disc(const Poly& f) {
  if (f.degree() < 2) throw PreconditionError("disc requires degree >= 2");
  return resultant(f, derivative(f));
}

/// Pairs closer than this fraction of the magnitude scale count as colliding.
inline constexpr double kGapFloor = 1e-2;

/// Magnitude against which Res(f, f') of a monic polynomial is judged.
///
/// |Res(f, f')| is the product of |r_i - r_j|^2 over root pairs, so the scale
/// is the same product with every gap raised to at least kGapFloor * rho, where
/// rho is the magnitude of the underlying data (e.g. a matrix norm). The
/// ratio is then 1 for well separated roots and (gap / (kGapFloor rho))^2 per
/// colliding pair, independent of the degree.
inline double discriminant_scale(std::span<const Complex> roots, double rho) {
  double s = 1.0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const double g = std::max(std::abs(roots[i] - roots[j]), kGapFloor * rho);
      s *= g * g;
    }
  return s;
}

}  // namespace distinct

#endif  // DISTINCT_RESULTANT_HPP
