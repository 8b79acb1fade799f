#include <gtest/gtest.h>

#include "distinct/family.hpp"
#include "support.hpp"

using namespace distinct;
using distinct::testing::poly_rel_diff;
using distinct::testing::Rng;

namespace {

MatrixPoly triangular(const Domain& d = Domain::complex_plane()) {
  ComplexMatrix a0(2, 2), a1(2, 2);
  a0 << 0, 1, 0, 0;
  a1 << 1, -1, 0, 2;
  return MatrixPoly({a0, a1}, d);
}

MatrixPoly scaled_identity() {
  return MatrixPoly({ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2)}, Domain::complex_plane());
}

void expect_poly_near(const Poly& got, const Poly& want, double tol = 1e-12) {
  EXPECT_LE(poly_rel_diff(got, want), tol) << "degree " << got.degree() << " vs " << want.degree();
}

}  // namespace

TEST(EvalFamily, ConstantFamily) {
  Rng rng(20);
  const ComplexMatrix a = rng.matrix(2, 3);
  const MatrixPoly f({a}, Domain::complex_plane());
  EXPECT_EQ(eval_family(f, Complex(0.3, 4.0)), a);
}

TEST(EvalFamily, ScaledIdentity) { EXPECT_EQ(eval_family(scaled_identity(), 2.0), ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2))); }

TEST(EvalFamily, SegmentReproducesConvexCombination) {
  Rng rng(21);
  const ComplexMatrix a = rng.matrix(3, 3), b = rng.matrix(3, 3);
  const MatrixPoly e = MatrixPoly::segment(a, b);
  for (double t : {0.0, 0.25, 0.5, 1.0})
    EXPECT_LE((eval_family(e, t) - ((1.0 - t) * a + t * b)).norm(), 1e-15);
}

TEST(EvalFamily, RejectsParameterOutsideInterval) {
  const MatrixPoly f = triangular(Domain::real_interval(0.0, 1.0));
  EXPECT_NO_THROW(eval_family(f, 0.5));
  try {
    eval_family(f, 1.5);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("parameter outside domain"), std::string::npos);
  }
}

TEST(MatrixPolyValidation, MismatchedShapesAndBadIntervals) {
  EXPECT_THROW(MatrixPoly({ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 3)}, Domain::complex_plane()),
               PreconditionError);
  EXPECT_THROW(MatrixPoly({}, Domain::complex_plane()), PreconditionError);
  EXPECT_THROW(MatrixPoly({ComplexMatrix::Zero(1, 1)}, Domain::real_interval(1.0, 1.0)), PreconditionError);
}

TEST(CharPolyFamily, TriangularFamily) {
  const BivariateCharPoly cp = char_poly_family(triangular());
  ASSERT_EQ(cp.n(), 2);
  expect_poly_near(cp.coeff(1), Poly{0.0, -3.0});
  expect_poly_near(cp.coeff(2), Poly{0.0, 0.0, 2.0});
}

TEST(CharPolyFamily, SwapMatrix) {
  ComplexMatrix s(2, 2);
  s << 0, 1, 1, 0;
  const BivariateCharPoly cp = char_poly_family(MatrixPoly({s}, Domain::complex_plane()));
  EXPECT_TRUE(normalize(cp.coeff(1), 1e-12).is_zero());
  expect_poly_near(cp.coeff(2), Poly{-1.0});
}

TEST(CharPolyFamily, ScaledIdentity) {
  const BivariateCharPoly cp = char_poly_family(scaled_identity());
  expect_poly_near(cp.coeff(1), Poly{0.0, -2.0});
  expect_poly_near(cp.coeff(2), Poly{0.0, 0.0, 1.0});
}

TEST(CharPolyFamily, RequiresSquare) {
  EXPECT_THROW(char_poly_family(MatrixPoly({ComplexMatrix::Zero(3, 2)}, Domain::complex_plane())), PreconditionError);
}

TEST(CharPolyFamily, AgreesWithCofactorExpansion) {
  Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.integer(1, 3), p = rng.integer(0, 2);
    const Domain d = trial % 2 == 0 ? Domain::complex_plane() : Domain::real_interval(0.0, 1.0);
    const MatrixPoly f = rng.family(n, n, p, d);
    const BivariateCharPoly cp = char_poly_family(f);
    const auto oracle = distinct::testing::cofactor_char_poly(f);
    for (int k = 1; k <= n; ++k) {
      EXPECT_LE(poly_rel_diff(cp.coeff(k), oracle[static_cast<std::size_t>(k - 1)]), 1e-10) << trial << " k=" << k;
      EXPECT_LE(cp.coeff(k).degree(), k * p);
    }
  }
}

TEST(CharPolyFamily, MatchesNumericCharPolyAtFreshPoints) {
  Rng rng(23);
  const MatrixPoly f = rng.family(3, 3, 2, Domain::complex_plane());
  const BivariateCharPoly cp = char_poly_family(f);
  for (int i = 0; i < 20; ++i) {
    const Complex x = rng.disk();
    const Poly want = numeric_char_poly(f(x));
    EXPECT_LE(poly_rel_diff(cp.at(x), want), 1e-9);
  }
}

TEST(GramFamily, ScaledColumnsRestrictedToRealLine) {
  ComplexMatrix a1 = ComplexMatrix::Zero(3, 2);
  a1(0, 0) = 1;
  a1(1, 1) = 1;
  const MatrixPoly g = gram_family(MatrixPoly({ComplexMatrix::Zero(3, 2), a1}, Domain::real_interval(-1.0, 1.0)));
  ASSERT_EQ(g.degree(), 2);
  EXPECT_EQ(g.coeffs()[0], ComplexMatrix::Zero(2, 2));
  EXPECT_EQ(g.coeffs()[1], ComplexMatrix::Zero(2, 2));
  EXPECT_EQ(g.coeffs()[2], ComplexMatrix(ComplexMatrix::Identity(2, 2)));
}

TEST(GramFamily, ConstantFamily) {
  Rng rng(24);
  const ComplexMatrix a = rng.matrix(3, 2);
  const MatrixPoly g = gram_family(MatrixPoly({a}, Domain::real_interval(0.0, 1.0)));
  EXPECT_LE((g.coeffs()[0] - a.adjoint() * a).norm(), 1e-15);
}

TEST(GramFamily, UnitColumn) {
  ComplexMatrix v(3, 1);
  v << 0.6, 0.0, Complex(0.0, 0.8);
  const MatrixPoly g = gram_family(MatrixPoly({ComplexMatrix::Zero(3, 1), v}, Domain::real_interval(-1.0, 1.0)));
  EXPECT_NEAR(std::abs(g.coeffs()[2](0, 0) - Complex(1.0)), 0.0, 1e-15);
}

TEST(GramFamily, RejectsComplexPlane) {
  try {
    gram_family(triangular());
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_STREQ(e.what(), "Gram family defined only over real domains");
  }
}

TEST(GramFamily, HermitianAtRealPoints) {
  Rng rng(25);
  const MatrixPoly f = rng.family(4, 3, 2, Domain::real_interval(-2.0, 2.0));
  const MatrixPoly g = gram_family(f);
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(-2.0, 2.0);
    const ComplexMatrix gx = g(x);
    EXPECT_LE((gx - f(x).adjoint() * f(x)).norm(), 1e-12 * gx.norm());
    const Poly cp = numeric_char_poly(gx);
    for (const auto& c : cp.coeffs()) EXPECT_LE(std::abs(c.imag()), 1e-10 * cp.max_abs_coeff());
  }
}

TEST(DetFamily, ScaledIdentity) { expect_poly_near(det_family(scaled_identity()), Poly{0.0, 0.0, 1.0}); }

TEST(DetFamily, SymmetricPair) {
  ComplexMatrix a0(2, 2);
  a0 << 0, 1, 1, 0;
  expect_poly_near(det_family(MatrixPoly({a0, ComplexMatrix::Identity(2, 2)}, Domain::complex_plane())),
                   Poly{-1.0, 0.0, 1.0});
}

TEST(DetFamily, ConstantSingularMatrix) {
  ComplexMatrix a(2, 2);
  a << 1, 2, 2, 4;
  EXPECT_TRUE(normalize(det_family(MatrixPoly({a}, Domain::complex_plane())), 1e-12).is_zero());
}

TEST(DetFamily, AgreesWithNumericDeterminant) {
  Rng rng(26);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.integer(1, 4), p = rng.integer(0, 2);
    const MatrixPoly f = rng.family(n, n, p, Domain::real_interval(-1.0, 2.0));
    const Poly d = det_family(f);
    EXPECT_LE(d.degree(), n * p);
    for (int i = 0; i < 5; ++i) {
      const double x = rng.uniform(-1.0, 2.0);
      const Complex want = determinant(f(x));
      EXPECT_LE(std::abs(d(x) - want), 1e-9 * std::max(1.0, std::pow(f(x).norm(), n))) << trial;
    }
  }
}

TEST(DetFamily, RequiresSquare) {
  EXPECT_THROW(det_family(MatrixPoly({ComplexMatrix::Zero(2, 3)}, Domain::complex_plane())), PreconditionError);
}
