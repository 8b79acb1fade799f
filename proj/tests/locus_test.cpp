#include <gtest/gtest.h>

#include <algorithm>

#include "distinct/locus.hpp"
#include "support.hpp"

using namespace distinct;
using distinct::testing::Rng;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

MatrixPoly triangular(const Domain& d = Domain::complex_plane()) {
  return MatrixPoly({mat2(0, 1, 0, 0), mat2(1, -1, 0, 2)}, d);
}

MatrixPoly scaled_columns() {
  ComplexMatrix a1 = ComplexMatrix::Zero(3, 2);
  a1(0, 0) = 1;
  a1(1, 1) = 1;
  return MatrixPoly({ComplexMatrix::Zero(3, 2), a1}, Domain::real_interval(-1.0, 1.0));
}

std::vector<Complex> values(const Locus& l) {
  std::vector<Complex> v;
  for (const auto& p : l.points()) v.push_back(p.value);
  return v;
}

void expect_points(const Locus& l, const std::vector<Complex>& want, double tol = 1e-8) {
  ASSERT_FALSE(l.is_entire());
  const auto got = values(l);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_LE(std::abs(got[i] - want[i]), tol) << i;
}

/// P diag(h(x), h(x), k(x)) P^{-1}: a repeated eigenvalue for every x.
MatrixPoly planted_repeated_family(Rng& rng, const Domain& d) {
  const ComplexMatrix p = rng.matrix(3, 3) + 2.0 * ComplexMatrix::Identity(3, 3);
  const ComplexMatrix pinv = p.inverse();
  const Complex h0 = rng.disk(), h1 = rng.disk(), k0 = rng.disk(), k1 = rng.disk();
  ComplexMatrix d0 = ComplexMatrix::Zero(3, 3), d1 = ComplexMatrix::Zero(3, 3);
  d0(0, 0) = d0(1, 1) = h0;
  d0(2, 2) = k0;
  d1(0, 0) = d1(1, 1) = h1;
  d1(2, 2) = k1;
  return MatrixPoly({p * d0 * pinv, p * d1 * pinv}, d);
}

}  // namespace

TEST(RepeatedEigenvalueLocus, TriangularFamilyOnPlane) { expect_points(repeated_eigenvalue_locus(triangular()), {0.0}); }

TEST(RepeatedEigenvalueLocus, ConstantJordanBlockIsEntire) {
  EXPECT_TRUE(repeated_eigenvalue_locus(MatrixPoly({mat2(0, 1, 0, 0)}, Domain::complex_plane())).is_entire());
}

TEST(RepeatedEigenvalueLocus, ScaledIdentityIsEntire) {
  EXPECT_TRUE(
      repeated_eigenvalue_locus(MatrixPoly({ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2)}, Domain::complex_plane()))
          .is_entire());
}

TEST(RepeatedEigenvalueLocus, RejectsSizeOne) {
  try {
    repeated_eigenvalue_locus(MatrixPoly({ComplexMatrix::Identity(1, 1)}, Domain::complex_plane()));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("distinctness vacuous"), std::string::npos);
  }
}

TEST(RepeatedEigenvalueLocus, RejectsNonSquare) {
  EXPECT_THROW(repeated_eigenvalue_locus(MatrixPoly({ComplexMatrix::Zero(3, 2)}, Domain::complex_plane())),
               PreconditionError);
}

TEST(RepeatedEigenvalueLocus, IntervalKeepsOnlyInDomainPoints) {
  // [[x, 1], [c, -x]] has eigenvalues +-sqrt(x^2 + c); c = -1/4 gives collisions at +-1/2.
  const MatrixPoly f({mat2(0, 1, -0.25, 0), mat2(1, 0, 0, -1)}, Domain::real_interval(0.0, 1.0));
  expect_points(repeated_eigenvalue_locus(f), {0.5});
}

TEST(RepeatedEigenvalueLocus, ComplexCollisionsOnPlane) {
  // Eigenvalues +-sqrt(x^2 + 1) collide at x = +-i.
  const MatrixPoly f({mat2(0, 1, 1, 0), mat2(1, 0, 0, -1)}, Domain::complex_plane());
  expect_points(repeated_eigenvalue_locus(f), {Complex(0, -1), Complex(0, 1)});
  const MatrixPoly g({mat2(0, 1, 1, 0), mat2(1, 0, 0, -1)}, Domain::real_interval(-2.0, 2.0));
  expect_points(repeated_eigenvalue_locus(g), {});
}

TEST(RepeatedEigenvalueLocus, PlantedRepeatedFamiliesAreEntireAndConfirmedBySampling) {
  Rng rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixPoly f = planted_repeated_family(rng, Domain::real_interval(0.0, 1.0));
    ASSERT_TRUE(repeated_eigenvalue_locus(f).is_entire()) << trial;
    for (int i = 0; i < 20; ++i) EXPECT_LT(min_eigen_gap(f(rng.uniform())), 1e-6);
  }
}

TEST(RepeatedEigenvalueLocus, ResidualsWithinToleranceAndPointsSorted) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const MatrixPoly f = rng.family(3, 3, 1, Domain::complex_plane());
    const Locus l = repeated_eigenvalue_locus(f);
    ASSERT_FALSE(l.is_entire());
    const auto& pts = l.points();
    for (const auto& p : pts) EXPECT_LE(p.residual, kDefaultTol);
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end(), [](const LocusPoint& a, const LocusPoint& b) {
      return a.value.real() != b.value.real() ? a.value.real() < b.value.real() : a.value.imag() < b.value.imag();
    }));
    // A generic pencil has n(n - 1) collision points.
    EXPECT_EQ(pts.size(), 6u) << trial;
    for (const auto& p : pts) EXPECT_LT(min_eigen_gap(f(p.value)), 1e-5 * std::max(1.0, f(p.value).norm()));
  }
}

TEST(RepeatedEigenvalueLocus, AgreesWithGridOracle) {
  Rng rng(32);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = rng.integer(2, 3), p = rng.integer(1, 2);
    const MatrixPoly f = rng.family(n, n, p, Domain::real_interval(0.0, 1.0));
    const Locus l = repeated_eigenvalue_locus(f);
    ASSERT_FALSE(l.is_entire());
    for (const auto& pt : l.points()) {
      const double t = pt.value.real();
      EXPECT_LT(distinct::testing::refined_min_gap([&](double x) { return min_eigen_gap(f(x)); }, std::max(0.0, t - 1e-6),
                                                   std::min(1.0, t + 1e-6)),
                1e-6);
    }
    for (const auto& s : grid_scan(f, GapMode::Eigen, 1000)) {
      const bool near = std::any_of(l.points().begin(), l.points().end(),
                                    [&](const LocusPoint& pt) { return std::abs(pt.value.real() - s.x) <= 0.01; });
      if (!near) {
        EXPECT_GT(s.min_gap, 1e-8);
      }
    }
  }
}

TEST(RepeatedSingularValueLocus, ScaledColumnsIsEntire) {
  EXPECT_TRUE(repeated_singular_value_locus(scaled_columns()).is_entire());
}

TEST(RepeatedSingularValueLocus, ScaledDiagonalCollidesOnlyAtZero) {
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = 1;
  b(1, 1) = 2;
  expect_points(repeated_singular_value_locus(MatrixPoly({ComplexMatrix::Zero(2, 2), b}, Domain::real_interval(0.0, 1.0))),
                {0.0});
}

TEST(RepeatedSingularValueLocus, ConstantDistinctIsEmpty) {
  expect_points(repeated_singular_value_locus(MatrixPoly({mat2(1, 0, 0, 2)}, Domain::real_interval(0.0, 1.0))), {});
}

TEST(RepeatedSingularValueLocus, RejectsComplexPlaneAndWideFamilies) {
  EXPECT_THROW(repeated_singular_value_locus(triangular()), PreconditionError);
  try {
    repeated_singular_value_locus(MatrixPoly({ComplexMatrix::Zero(2, 3)}, Domain::real_interval(0.0, 1.0)));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("m >= n"), std::string::npos);
  }
}

TEST(RepeatedSingularValueLocus, PointsAreRealCollisions) {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixPoly f({rng.real_matrix(3, 2), rng.real_matrix(3, 2)}, Domain::real_interval(-1.0, 1.0));
    const Locus l = repeated_singular_value_locus(f);
    ASSERT_FALSE(l.is_entire());
    for (const auto& p : l.points()) {
      EXPECT_EQ(p.value.imag(), 0.0);
      EXPECT_GE(p.value.real(), -1.0);
      EXPECT_LE(p.value.real(), 1.0);
      EXPECT_LT(min_singular_gap(f(p.value)), 1e-5);
    }
  }
}

TEST(RepeatedSingularValueLocus, SingularValuesAreRootsOfGramEigenvalues) {
  Rng rng(34);
  const MatrixPoly f = rng.family(4, 3, 2, Domain::real_interval(-1.0, 1.0));
  const MatrixPoly g = gram_family(f);
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(-1.0, 1.0);
    const auto sv = singular_values(f(x));
    auto ev = eigenvalues(g(x));
    std::vector<double> roots;
    for (const auto& e : ev) roots.push_back(std::sqrt(std::max(0.0, e.real())));
    std::sort(roots.rbegin(), roots.rend());
    for (std::size_t k = 0; k < sv.size(); ++k) EXPECT_LE(std::abs(sv[k] - roots[k]), 1e-8 * sv[0]);
  }
}

TEST(SingularMatrixLocus, SymmetricPair) {
  expect_points(singular_matrix_locus(MatrixPoly({mat2(0, 1, 1, 0), mat2(1, 0, 0, 1)}, Domain::complex_plane())),
                {-1.0, 1.0});
}

TEST(SingularMatrixLocus, IdenticallySingularIsEntire) {
  EXPECT_TRUE(
      singular_matrix_locus(MatrixPoly({ComplexMatrix::Zero(2, 2), mat2(1, 0, 0, 0)}, Domain::complex_plane())).is_entire());
}

TEST(SingularMatrixLocus, ScaledIdentity) {
  expect_points(
      singular_matrix_locus(MatrixPoly({ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2)}, Domain::complex_plane())),
      {0.0});
}

TEST(SingularMatrixLocus, RejectsNonSquare) {
  EXPECT_THROW(singular_matrix_locus(MatrixPoly({ComplexMatrix::Zero(2, 3)}, Domain::complex_plane())), PreconditionError);
}

TEST(GridScan, ConstantDiagonalHasUnitGaps) {
  for (const auto& s : grid_scan(MatrixPoly({mat2(1, 0, 0, 2)}, Domain::real_interval(0.0, 1.0)), GapMode::Eigen, 7))
    EXPECT_NEAR(s.min_gap, 1.0, 1e-14);
}

TEST(GridScan, ScaledDiagonalGapIsParameter) {
  const auto scan = grid_scan(MatrixPoly({ComplexMatrix::Zero(2, 2), mat2(1, 0, 0, 2)}, Domain::real_interval(0.0, 1.0)),
                              GapMode::Singular, 11);
  ASSERT_EQ(scan.size(), 11u);
  EXPECT_EQ(scan.front().x, 0.0);
  EXPECT_EQ(scan.back().x, 1.0);
  for (const auto& s : scan) EXPECT_NEAR(s.min_gap, s.x, 1e-14);
}

TEST(GridScan, ScaledColumnsGapsVanish) {
  for (const auto& s : grid_scan(scaled_columns(), GapMode::Singular, 101)) EXPECT_LT(s.min_gap, 1e-12);
}

TEST(GridScan, Preconditions) {
  EXPECT_THROW(grid_scan(triangular(), GapMode::Eigen, 10), PreconditionError);
  EXPECT_THROW(grid_scan(triangular(Domain::real_interval(0.0, 1.0)), GapMode::Eigen, 1), PreconditionError);
}
