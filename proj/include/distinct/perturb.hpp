#ifndef DISTINCT_PERTURB_HPP
#define DISTINCT_PERTURB_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "distinct/error.hpp"
#include "distinct/family.hpp"
#include "distinct/linalg.hpp"
#include "distinct/locus.hpp"

namespace distinct {

/// Relative gap a given endpoint must clear to count as having distinct values.
inline constexpr double kPreconditionGap = 1e-10;
/// Relative gap every returned matrix is verified against.
inline constexpr double kResultGap = 1e-12;

/// Exceptional parameters below this fraction of the path length count as the
/// start itself when the start lacks the property.
inline constexpr double kStartClusterFraction = 1e-6;

/// Outcome of moving along a path until the target property holds.
struct SegmentReport {
  /// Exceptional parameters found on the path, sorted.
  std::vector<double> exceptional_ts;
  /// Safe radius: the least positive exceptional parameter, or the path end.
  double s = 1.0;
  /// s / 2, or 0 when the start already has the property.
  double t_star = 0.0;
  ComplexMatrix result;
};

enum class Target { DistinctEigenvalues, DistinctSingularValues };

namespace detail {

inline double norm_or_tiny(const ComplexMatrix& m) {
  return std::max(frobenius_norm(m), std::numeric_limits<double>::min());
}

inline bool has_distinct_eigenvalues(const ComplexMatrix& m, double rel) {
  return m.rows() < 2 || min_eigen_gap(m) > rel * norm_or_tiny(m);
}

inline bool has_distinct_singular_values(const ComplexMatrix& m, double rel) {
  return std::min(m.rows(), m.cols()) < 2 || min_singular_gap(m) > rel * norm_or_tiny(m);
}

inline bool is_nonsingular(const ComplexMatrix& m, double rel) {
  const auto sv = singular_values(m);
  return !sv.empty() && sv.back() > rel * norm_or_tiny(m);
}

inline bool has_target(const ComplexMatrix& m, Target target, double rel) {
  return target == Target::DistinctEigenvalues ? has_distinct_eigenvalues(m, rel)
                                               : has_distinct_singular_values(m, rel);
}

inline Locus target_locus(const MatrixPoly& path, Target target, double tol, std::uint64_t seed) {
  return target == Target::DistinctEigenvalues ? repeated_eigenvalue_locus(path, tol, seed)
                                               : repeated_singular_value_locus(path, tol, seed);
}

inline std::size_t distinctness_size(const MatrixPoly& path, Target target) {
  return static_cast<std::size_t>(target == Target::DistinctEigenvalues ? path.rows()
                                                                        : std::min(path.rows(), path.cols()));
}

/// Safe-radius construction on a path over [0, T].
///
/// Every exceptional parameter is a root of a nonzero polynomial, so the open
/// interval (0, s) up to the first positive one contains only matrices with
/// the property; the midpoint s / 2 is returned.
/// Replaces exceptional parameters that belong to a failing start by 0.
///
/// A repeated value at t = 0 is a multiple zero of the discriminant, which
/// rounding scatters by up to about eps^(1/multiplicity); below
/// kStartClusterFraction of the path such roots cannot be told apart from 0.
inline void merge_into_start(std::vector<double>& ts, double end_t) {
  std::erase_if(ts, [&](double t) { return t <= kStartClusterFraction * end_t; });
  ts.insert(ts.begin(), 0.0);
}

template <class Holds, class CollectLoci>
SegmentReport safe_point_on_path(const MatrixPoly& path, Holds holds, CollectLoci collect_loci,
                                 const std::string& property) {
  require(path.domain().is_real_interval() && path.domain().interval().a == 0.0,
          "path must be parametrized over [0, T]");
  const double end_t = path.domain().interval().b;
  const ComplexMatrix start = path(0.0);
  if (!holds(path(end_t), kPreconditionGap)) throw PreconditionError("endpoint does not have " + property);

  std::vector<double> ts;
  for (const Locus& locus : collect_loci(path)) {
    if (locus.is_entire()) throw NumericalError("exceptional set is the whole path although its endpoint has " + property);
    for (const auto& p : locus.points()) ts.push_back(p.value.real());
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(), [&](double l, double r) { return r - l <= 1e-12 * end_t; }), ts.end());

  const bool start_holds = holds(start, kPreconditionGap);
  if (!start_holds) merge_into_start(ts, end_t);

  SegmentReport report{ts, end_t, 0.0, start};
  for (double t : ts)
    if (t > 1e-12 * end_t) {
      report.s = t;
      break;
    }
  if (start_holds) return report;

  report.t_star = 0.5 * report.s;
  report.result = path(report.t_star);
  if (!holds(report.result, kResultGap))
    throw NumericalError("matrix at the safe midpoint failed the direct check for " + property);
  return report;
}

inline std::string property_name(Target target) {
  return target == Target::DistinctEigenvalues ? "distinct eigenvalues" : "distinct singular values";
}

inline SegmentReport path_perturb(const MatrixPoly& path, Target target, bool require_nonsingular, double tol,
                                  std::uint64_t seed) {
  const bool check_distinct = distinctness_size(path, target) >= 2;
  auto holds = [&](const ComplexMatrix& m, double rel) {
    return has_target(m, target, rel) && (!require_nonsingular || is_nonsingular(m, rel));
  };
  auto loci = [&](const MatrixPoly& p) {
    std::vector<Locus> out;
    if (check_distinct) out.push_back(target_locus(p, target, tol, seed));
    if (require_nonsingular) out.push_back(singular_matrix_locus(p, tol, seed));
    return out;
  };
  std::string name = property_name(target);
  if (require_nonsingular) name += " and nonsingularity";
  return safe_point_on_path(path, holds, loci, name);
}

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "endpoints must share dimensions");
  require(a.size() > 0, "matrix dimensions must be positive");
  require_finite(a, "A");
  require_finite(b, "B");
}

/// diag(1, ..., n)
inline ComplexMatrix default_direction(Eigen::Index n) {
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) b(i, i) = static_cast<double>(i + 1);
  return b;
}

/// Real diagonal with pairwise distinct |b_ii| (distinct magnitudes keep tB's
/// singular values distinct too).
inline void validate_direction(const ComplexMatrix& b, Eigen::Index n) {
  require(b.rows() == n && b.cols() == n, "direction B must match the shape of A");
  require_finite(b, "B");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i == j) {
        require(b(i, i).imag() == 0.0, "direction B must be real diagonal");
      } else {
        require(b(i, j) == Complex{}, "direction B must be real diagonal");
      }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      require(std::abs(b(i, i).real()) != std::abs(b(j, j).real()),
              "direction B must have pairwise distinct diagonal magnitudes");
}

/// S = c B with |S|_F <= eps such that A + S has the target property.
inline ComplexMatrix perturb_along_ray(const ComplexMatrix& a, double eps, const std::optional<ComplexMatrix>& direction,
                                       Target target, double tol, std::uint64_t seed) {
  require(a.rows() == a.cols() && a.size() > 0, "A must be square");
  require_finite(a, "A");
  require(std::isfinite(eps) && eps > 0.0, "eps must be positive");
  const Eigen::Index n = a.rows();
  const ComplexMatrix b = direction ? *direction : default_direction(n);
  validate_direction(b, n);
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  if (n < 2 || has_target(a, target, kPreconditionGap)) return zero;

  const double reach = eps / frobenius_norm(b);
  Locus locus = target_locus(MatrixPoly({a, b}, Domain::real_interval(0.0, reach)), target, tol, seed);
  if (locus.is_entire()) {
    // The ray is too short for tol to resolve; D is a nonzero polynomial on
    // the whole line, so classify a longer stretch and keep what lies inside.
    const double longer = 4.0 * std::max(reach, frobenius_norm(a) / frobenius_norm(b));
    locus = target_locus(MatrixPoly({a, b}, Domain::real_interval(0.0, longer)), target, tol, seed);
    if (locus.is_entire()) throw PreconditionError("no matrix with " + property_name(target) + " on this ray");
  }
  std::vector<double> ts;
  for (const auto& p : locus.points()) ts.push_back(p.value.real());
  merge_into_start(ts, reach);
  double s = reach;
  for (double t : ts)
    if (t > 0.0) {
      s = std::min(s, t);
      break;
    }
  const ComplexMatrix perturbation = (0.5 * std::min(reach, s)) * b;
  if (!has_target(a + perturbation, target, kResultGap))
    throw NumericalError("A + S failed the direct check for " + property_name(target));
  return perturbation;
}

}  // namespace detail

/// Moves from A toward B along E(t) = (1 - t) A + t B.
///
/// B must have distinct eigenvalues (and be nonsingular when requested); the
/// result E(s / 2) then has them too, where s is the first positive exceptional t.
inline SegmentReport distinct_eigen_on_segment(const ComplexMatrix& a, const ComplexMatrix& b, bool require_nonsingular,
                                               double tol = kDefaultTol, std::uint64_t seed = kDefaultSeed) {
  detail::require_same_shape(a, b);
  require(a.rows() == a.cols(), "eigenvalue segments require square matrices");
  if (a == b && !(detail::has_distinct_eigenvalues(a, kPreconditionGap) &&
                  (!require_nonsingular || detail::is_nonsingular(a, kPreconditionGap))))
    throw PreconditionError("degenerate segment");
  return detail::path_perturb(MatrixPoly::segment(a, b), Target::DistinctEigenvalues, require_nonsingular, tol, seed);
}

/// Singular-value analogue of distinct_eigen_on_segment for m x n matrices, m >= n.
inline SegmentReport distinct_singular_on_segment(const ComplexMatrix& a, const ComplexMatrix& b,
                                                  double tol = kDefaultTol, std::uint64_t seed = kDefaultSeed) {
  detail::require_same_shape(a, b);
  require(a.rows() >= a.cols(), "singular value segments assume m >= n");
  if (a == b && !detail::has_distinct_singular_values(a, kPreconditionGap))
    throw PreconditionError("degenerate segment");
  return detail::path_perturb(MatrixPoly::segment(a, b), Target::DistinctSingularValues, false, tol, seed);
}

/// Same safe-radius construction along an arbitrary polynomial path on [0, T].
inline SegmentReport polynomial_path_perturb(const MatrixPoly& path, Target target, double tol = kDefaultTol,
                                             std::uint64_t seed = kDefaultSeed) {
  if (target == Target::DistinctEigenvalues) require(path.is_square(), "eigenvalue paths require square matrices");
  if (target == Target::DistinctSingularValues) require(path.rows() >= path.cols(), "singular value paths assume m >= n");
  return detail::path_perturb(path, target, false, tol, seed);
}

/// S = c diag(b) with |S|_F <= eps and A + S having distinct singular values.
///
/// F(t) = A + t B has finitely many parameters with repeated singular values,
/// so c is half the first positive one (capped by eps / |B|_F). Returns zero
/// when A already qualifies. The direction defaults to diag(1, ..., n).
inline ComplexMatrix perturb_to_distinct_singular(const ComplexMatrix& a, double eps, double tol = kDefaultTol,
                                                  const std::optional<ComplexMatrix>& direction = std::nullopt,
                                                  std::uint64_t seed = kDefaultSeed) {
  return detail::perturb_along_ray(a, eps, direction, Target::DistinctSingularValues, tol, seed);
}

/// Eigenvalue counterpart of perturb_to_distinct_singular.
inline ComplexMatrix perturb_to_distinct_eigen(const ComplexMatrix& a, double eps, double tol = kDefaultTol,
                                               const std::optional<ComplexMatrix>& direction = std::nullopt,
                                               std::uint64_t seed = kDefaultSeed) {
  return detail::perturb_along_ray(a, eps, direction, Target::DistinctEigenvalues, tol, seed);
}

}  // namespace distinct

#endif  // DISTINCT_PERTURB_HPP
