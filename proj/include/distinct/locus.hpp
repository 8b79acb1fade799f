#ifndef DISTINCT_LOCUS_HPP
#define DISTINCT_LOCUS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "distinct/error.hpp"
#include "distinct/family.hpp"
#include "distinct/linalg.hpp"
#include "distinct/poly.hpp"
#include "distinct/resultant.hpp"

namespace distinct {

inline constexpr std::uint64_t kDefaultSeed = 0x5eedULL;

struct LocusPoint {
  Complex value;
  /// |D(value)| relative to the larger of the sampled and the local magnitude scale.
  double residual = 0.0;
};

/// Exceptional parameter set: the whole domain, or finitely many points.
class Locus {
 public:
  enum class Kind { EntireDomain, FiniteSet };

  static Locus entire_domain() { return Locus(Kind::EntireDomain, {}); }
  static Locus finite_set(std::vector<LocusPoint> points) { return Locus(Kind::FiniteSet, std::move(points)); }

  Kind kind() const noexcept { return kind_; }
  bool is_entire() const noexcept { return kind_ == Kind::EntireDomain; }
  const std::vector<LocusPoint>& points() const noexcept { return points_; }

 private:
  Locus(Kind kind, std::vector<LocusPoint> points) : kind_(kind), points_(std::move(points)) {}

  Kind kind_;
  std::vector<LocusPoint> points_;
};

namespace detail {

/// Value of a scalar function at a parameter, with the magnitude it is judged against.
struct Sample {
  Complex value;
  double scale = 0.0;
};

inline constexpr int kConfirmationNodes = 10;
/// Relative cutoff for trailing coefficients of the interpolated discriminant.
inline constexpr double kTrimTol = 1e-12;

inline std::vector<Complex> random_domain_points(const Domain& domain, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) {
    if (domain.is_real_interval()) {
      const auto& iv = domain.interval();
      out.emplace_back(iv.a + (iv.b - iv.a) * unit(rng));
    } else {
      out.push_back(std::polar(std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng)));
    }
  }
  return out;
}

inline Complex snap_to_zero(Complex x, double floor) {
  return {std::abs(x.real()) <= floor ? 0.0 : x.real(), std::abs(x.imag()) <= floor ? 0.0 : x.imag()};
}

inline std::vector<LocusPoint> dedupe_sorted(std::vector<LocusPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const LocusPoint& l, const LocusPoint& r) {
    return l.value.real() != r.value.real() ? l.value.real() < r.value.real() : l.value.imag() < r.value.imag();
  });
  std::vector<LocusPoint> out;
  for (const auto& p : pts) {
    auto near = std::find_if(out.begin(), out.end(), [&](const LocusPoint& q) {
      return std::abs(q.value - p.value) <= 1e-7 * std::max(1.0, std::abs(p.value));
    });
    if (near == out.end()) {
      out.push_back(p);
    } else if (p.residual < near->residual) {
      *near = p;
    }
  }
  return out;
}

/// Classifies the zero set of a polynomial-in-x scalar function over a domain.
///
/// The function is sampled on the interpolation circle of the domain and
/// interpolated with the given degree bound. The zero set is the entire domain
/// when every coefficient is below tol * scale and the function also vanishes
/// at random confirmation points; otherwise it is the in-domain roots that
/// survive a direct residual check.
template <class Evaluate>
Locus classify_zero_set(Evaluate&& evaluate, int degree_bound, const Domain& domain, double tol,
                        std::uint64_t seed) {
  require(tol >= 0.0, "tolerance must be nonnegative");
  const auto circle = interpolation_circle(domain);
  const auto nodes = circle_nodes(circle, degree_bound + 1);
  std::vector<Complex> values(nodes.size());
  double scale = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const Sample s = evaluate(nodes[j]);
    values[j] = s.value;
    scale = std::max(scale, s.scale);
  }
  const auto coeffs = dft_interpolate(values);
  double largest = 0.0;
  for (const auto& c : coeffs) largest = std::max(largest, std::abs(c));

  if (largest <= tol * scale) {
    bool confirmed = true;
    for (const auto& x : random_domain_points(domain, kConfirmationNodes, seed))
      confirmed = confirmed && std::abs(evaluate(x).value) <= tol * scale;
    if (confirmed) return Locus::entire_domain();
  }

  const Poly d = normalize(Poly(coeffs), kTrimTol);
  if (d.degree() < 1) return Locus::finite_set({});
  // Components at rounding level relative to the domain scale become exact zeros.
  const double zero_floor = 1e-14 * (std::abs(circle.center) + circle.radius);
  std::vector<LocusPoint> points;
  const RootSet found = roots(d, 0.0);
  for (const auto& root : found.distinct()) {
    Complex x = snap_to_zero(circle.to_global(root.value), zero_floor);
    if (domain.is_real_interval()) {
      if (std::abs(x.imag()) > tol * std::max(1.0, std::abs(x))) continue;
      if (!domain.contains(x)) continue;
      x = std::clamp(x.real(), domain.interval().a, domain.interval().b);
    }
    const Sample at = evaluate(x);
    const double denom = std::max(scale, at.scale);
    const double residual = denom > 0.0 ? std::abs(at.value) / denom : 0.0;
    if (residual > tol) continue;
    points.push_back({x, residual});
  }
  return Locus::finite_set(dedupe_sorted(std::move(points)));
}

/// Res_y(p, p') of the numeric characteristic polynomial of a square matrix.
inline Sample eigen_discriminant_sample(const ComplexMatrix& m) {
  const auto ev = eigenvalues(m);
  return {disc(poly_from_roots(ev)), discriminant_scale(ev, frobenius_norm(m))};
}

}  // namespace detail

/// Parameters where F(x) has a repeated eigenvalue.
///
/// D(x) = Res_y(p_x, p_x') is a polynomial of degree at most n(n-1)p, so the
/// set is either the whole domain or the finitely many roots of D there.
inline Locus repeated_eigenvalue_locus(const MatrixPoly& f, double tol = kDefaultTol,
                                       std::uint64_t seed = kDefaultSeed) {
  require(f.is_square(), "repeated_eigenvalue_locus requires a square family");
  const int n = static_cast<int>(f.rows());
  require(n >= 2, "distinctness vacuous for n < 2");
  return detail::classify_zero_set([&](Complex x) { return detail::eigen_discriminant_sample(f(x)); },
                                   n * (n - 1) * f.degree(), f.domain(), tol, seed);
}

/// Parameters in a real interval where F(x) has a repeated singular value.
///
/// Repeated singular values of F(x) are repeated eigenvalues of the Gram
/// family G(x) = F(x)^* F(x), which is polynomial in x on the real line.
inline Locus repeated_singular_value_locus(const MatrixPoly& f, double tol = kDefaultTol,
                                           std::uint64_t seed = kDefaultSeed) {
  if (!f.domain().is_real_interval())
    throw PreconditionError("repeated singular values require a real interval domain");
  require(f.rows() >= f.cols(), "singular value locus assumes m >= n");
  const int n = static_cast<int>(f.cols());
  require(n >= 2, "distinctness vacuous for n < 2");
  const MatrixPoly g = gram_family(f);
  return detail::classify_zero_set([&](Complex x) { return detail::eigen_discriminant_sample(g(x)); },
                                   n * (n - 1) * g.degree(), g.domain(), tol, seed);
}

/// Parameters where det F(x) = 0.
inline Locus singular_matrix_locus(const MatrixPoly& f, double tol = kDefaultTol, std::uint64_t seed = kDefaultSeed) {
  require(f.is_square(), "singular_matrix_locus requires a square family");
  const int n = static_cast<int>(f.rows());
  return detail::classify_zero_set(
      [&f](Complex x) {
        const ComplexMatrix m = f(x);
        // |det| = prod sigma_i; judge it against the same product with each
        // singular value raised to at least kGapFloor * |F(x)|_F.
        double scale = 1.0;
        const double floor = kGapFloor * frobenius_norm(m);
        for (double sv : singular_values(m)) scale *= std::max(sv, floor);
        return detail::Sample{determinant(m), scale};
      },
      n * f.degree(), f.domain(), tol, seed);
}

enum class GapMode { Eigen, Singular };

struct GapSample {
  double x = 0.0;
  double min_gap = 0.0;
};

inline double min_gap(const ComplexMatrix& m, GapMode mode) {
  return mode == GapMode::Eigen ? min_eigen_gap(m) : min_singular_gap(m);
}

/// Minimum eigenvalue or singular-value gap on a uniform grid over [a, b].
inline std::vector<GapSample> grid_scan(const MatrixPoly& f, GapMode mode, int grid_points) {
  if (!f.domain().is_real_interval()) throw PreconditionError("grid_scan requires a real interval domain");
  require(grid_points >= 2, "grid_scan needs at least two grid points");
  if (mode == GapMode::Eigen) require(f.is_square(), "eigen gaps require a square family");
  const auto& iv = f.domain().interval();
  std::vector<GapSample> out(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    const double x = i + 1 == grid_points ? iv.b : iv.a + (iv.b - iv.a) * i / (grid_points - 1);
    out[static_cast<std::size_t>(i)] = {x, min_gap(f(x), mode)};
  }
  return out;
}

}  // namespace distinct

#endif  // DISTINCT_LOCUS_HPP
