#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "matpow/error.hpp"
#include "matpow/matrix.hpp"
#include "matpow/polynomial.hpp"
#include "matpow/rational.hpp"

namespace matpow {

/// The m^2 x (m+1) stack whose column j is the column-major vectorization
/// of A^j, for j = 0..m. Linear dependence among the matrix powers turns
/// into ordinary column dependence of this grid.
inline Grid build_power_stack(const Mat& a) {
  std::size_t m = a.dim();
  Grid stack(m * m, std::vector<Rational>(m + 1));
  Mat power = Mat::identity(m);
  for (std::size_t j = 0; j <= m; ++j) {
    std::vector<Rational> col = vec_columns(power);
    for (std::size_t i = 0; i < m * m; ++i) stack[i][j] = col[i];
    if (j < m) power = power * a;
  }
  return stack;
}

/// Characteristic polynomial by the Faddeev-LeVerrier recursion: exact
/// over rationals, O(m^4) ring operations, no determinant expansion.
inline Poly charpoly(const Mat& a) {
  std::size_t m = a.dim();
  std::vector<Rational> c(m + 1);
  c[m] = Rational(1);
  Mat n = Mat::identity(m);
  for (std::size_t k = 1; k <= m; ++k) {
    if (k > 1) {
      // N_k = A*N_{k-1} + c_{m-k+1} * I
      for (std::size_t d = 0; d < m; ++d) n(d, d) += c[m - k + 1];
    }
    Mat an = a * n;
    Rational trace(0);
    for (std::size_t d = 0; d < m; ++d) trace += an(d, d);
    c[m - k] = -(trace / Rational(BigInt(k)));
    n = std::move(an);
  }
  return Poly(std::move(c));
}

struct MinPolyReport {
  Poly q;             // monic minimal polynomial
  std::size_t r = 0;  // deg(q) == rank of the reduced stack
  RrefResult b_hat;   // reduced row echelon form of the power stack
  Poly delta;         // characteristic polynomial, for cross-checks
};

/// Minimal polynomial via Gauss elimination on the vectorized powers.
///
/// The stack B = (vec I | vec A | ... | vec A^m) is reduced once; the
/// count r of leading ones is the least degree at which the powers become
/// dependent, and the dependency coefficients of vec(A^r) on the earlier
/// powers sit in column r of the reduced form. Reading them off negated
/// gives the monic annihilator of least degree:
///   q(k) = k^r - Bhat[r-1][r] k^{r-1} - ... - Bhat[0][r].
inline MinPolyReport minimal_polynomial(const Mat& a) {
  MinPolyReport report;
  Grid stack = build_power_stack(a);
  report.b_hat = rref(stack);
  report.r = report.b_hat.rank;
  std::size_t r = report.r;

  // The leading ones must occupy the first r columns: powers below the
  // minimal degree are linearly independent.
  for (std::size_t i = 0; i < r; ++i)
    if (report.b_hat.pivot_cols[i] != i)
      throw InternalError("minimal polynomial: pivots not in leading columns");

  std::vector<Rational> coeffs(r + 1);
  coeffs[r] = Rational(1);
  for (std::size_t j = 0; j < r; ++j) coeffs[j] = -report.b_hat.rref[j][r];
  report.q = Poly(std::move(coeffs));

  // q(A) = 0, checked exactly against the stack columns already in hand.
  std::size_t m = a.dim();
  for (std::size_t i = 0; i < m * m; ++i) {
    Rational s(0);
    for (std::size_t j = 0; j <= r; ++j) s += report.q.coeff(j) * stack[i][j];
    if (!s.is_zero()) throw InternalError("minimal polynomial does not annihilate the matrix");
  }

  report.delta = charpoly(a);
  if (!poly_divrem(report.delta, report.q).rem.is_zero())
    throw InternalError("minimal polynomial does not divide the characteristic polynomial");
  return report;
}

}  // namespace matpow
