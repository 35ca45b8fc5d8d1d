#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "matpow/error.hpp"
#include "matpow/polynomial.hpp"
#include "matpow/rational.hpp"

namespace matpow {

/// Dense square matrix over Rational, row-major storage.
class Mat {
 public:
  explicit Mat(std::size_t dim) : dim_(dim), e_(dim * dim) {
    if (dim == 0) throw DimMismatch("matrix dimension must be positive");
  }

  static Mat identity(std::size_t dim) {
    Mat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = Rational(1);
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<Rational>>& rows) {
    std::size_t dim = rows.size();
    Mat m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (rows[i].size() != dim)
        throw DimMismatch("matrix rows must all have length equal to the row count");
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t dim() const { return dim_; }

  Rational& operator()(std::size_t i, std::size_t j) { return e_[i * dim_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return e_[i * dim_ + j]; }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.dim_ == b.dim_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  friend Mat operator+(const Mat& a, const Mat& b) {
    check_same_dim(a, b);
    Mat c(a.dim_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] + b.e_[i];
    return c;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    check_same_dim(a, b);
    Mat c(a.dim_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] - b.e_[i];
    return c;
  }

  // Classical cubic product; dimensions here are tiny and the cost is
  // dominated by exact-coefficient growth, not flops.
  friend Mat operator*(const Mat& a, const Mat& b) {
    check_same_dim(a, b);
    Mat c(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i)
      for (std::size_t k = 0; k < a.dim_; ++k) {
        const Rational& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < a.dim_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Mat operator*(const Rational& s, const Mat& m) {
    Mat c(m.dim_);
    for (std::size_t i = 0; i < m.e_.size(); ++i) c.e_[i] = s * m.e_[i];
    return c;
  }

  bool is_zero() const {
    for (const Rational& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

 private:
  static void check_same_dim(const Mat& a, const Mat& b) {
    if (a.dim_ != b.dim_) throw DimMismatch("matrix dimensions differ");
  }

  std::size_t dim_;
  std::vector<Rational> e_;
};

/// Rectangular grid of rationals; rows may outnumber columns.
using Grid = std::vector<std::vector<Rational>>;

/// Column-stacking vectorization: column j of `a` lands in slots
/// [j*m, (j+1)*m) of the result.
inline std::vector<Rational> vec_columns(const Mat& a) {
  std::size_t m = a.dim();
  std::vector<Rational> v(m * m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) v[j * m + i] = a(i, j);
  return v;
}

struct RrefResult {
  Grid rref;
  std::vector<std::size_t> pivot_cols;  // strictly increasing
  std::size_t rank = 0;                 // == pivot_cols.size()
};

/// Exact reduced row echelon form. Pivot choice is the first row with a
/// nonzero entry in the current column; arithmetic is exact so no
/// magnitude pivoting is needed, and the elimination path is
/// deterministic (the RREF itself is unique regardless).
inline RrefResult rref(Grid rows) {
  std::size_t n_rows = rows.size();
  std::size_t n_cols = n_rows == 0 ? 0 : rows[0].size();
  for (const auto& row : rows)
    if (row.size() != n_cols) throw DimMismatch("rref input must be rectangular");

  RrefResult result;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < n_cols && pivot_row < n_rows; ++col) {
    std::size_t sel = pivot_row;
    while (sel < n_rows && rows[sel][col].is_zero()) ++sel;
    if (sel == n_rows) continue;
    std::swap(rows[sel], rows[pivot_row]);

    const Rational inv = Rational(1) / rows[pivot_row][col];
    for (std::size_t j = col; j < n_cols; ++j) rows[pivot_row][j] = inv * rows[pivot_row][j];
    rows[pivot_row][col] = Rational(1);  // exact by construction

    for (std::size_t i = 0; i < n_rows; ++i) {
      if (i == pivot_row || rows[i][col].is_zero()) continue;
      Rational factor = rows[i][col];
      for (std::size_t j = col; j < n_cols; ++j)
        rows[i][j] -= factor * rows[pivot_row][j];
      rows[i][col] = Rational(0);
    }
    result.pivot_cols.push_back(col);
    ++pivot_row;
  }
  result.rank = result.pivot_cols.size();
  result.rref = std::move(rows);
  return result;
}

/// Horner evaluation of p at a square matrix; the constant term
/// multiplies the identity.
inline Mat eval_poly_at_matrix(const Poly& p, const Mat& a) {
  Mat acc(a.dim());
  if (p.is_zero()) return acc;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * a;
    const Rational& c = p.coeff(i);
    if (!c.is_zero())
      for (std::size_t d = 0; d < a.dim(); ++d) acc(d, d) += c;
  }
  return acc;
}

}  // namespace matpow
