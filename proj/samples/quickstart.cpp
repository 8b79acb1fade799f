// Walks through the main operations on small hand-checkable inputs.
#include <iostream>

#include "distinct/distinct.hpp"

using namespace distinct;

int main() {
  // F(x) = [[x, 1 - x], [0, 2x]]: eigenvalues x and 2x meet only at 0.
  ComplexMatrix a0(2, 2), a1(2, 2);
  a0 << 0, 1, 0, 0;
  a1 << 1, -1, 0, 2;
  const MatrixPoly f({a0, a1}, Domain::complex_plane());
  const Locus locus = repeated_eigenvalue_locus(f);
  std::cout << "repeated eigenvalues at:";
  for (const auto& p : locus.points()) std::cout << ' ' << p.value << " (residual " << p.residual << ')';
  std::cout << '\n';

  // The identity has a double singular value; S = c diag(1, 2) splits it.
  const ComplexMatrix s = perturb_to_distinct_singular(ComplexMatrix::Identity(2, 2), 0.1);
  std::cout << "S diagonal: " << s(0, 0).real() << ' ' << s(1, 1).real() << ", |S|_F = " << frobenius_norm(s) << '\n';

  // Segment from a nilpotent Jordan block to diag(1, 2).
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = 1;
  b(1, 1) = 2;
  const SegmentReport r = distinct_eigen_on_segment(a0, b, false);
  std::cout << "safe radius " << r.s << ", t* = " << r.t_star << '\n';

  // One row of ones in a 3 x 2 pattern cannot carry distinct singular values densely.
  Pattern p(3, 2);
  p.set(0, 0, true);
  p.set(0, 1, true);
  std::cout << "one-row pattern dense: " << std::boolalpha << density_distinct_singular(p).dense << '\n';
  std::cout << "identity pattern dense: " << density_distinct_singular(Pattern::identity(3)).dense << '\n';
}
