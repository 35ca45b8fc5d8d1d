#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matpow/error.hpp"
#include "matpow/matrix.hpp"
#include "matpow/minpoly.hpp"
#include "matpow/polynomial.hpp"
#include "matpow/rational.hpp"
#include "matpow/roots.hpp"

namespace matpow {

enum class Trig { none, cos, sin };

/// One right-hand-side function of the interpolation system. Setting
/// k = root in the j-th derivative of k^n produces n^(j) * root^(n-j),
/// where n^(j) is the falling factorial n(n-1)...(n-j+1); conjugate pairs
/// contribute a cos and a sin row instead (half-sum and half-difference
/// of the two conjugate equations).
struct BasisFunction {
  std::size_t root_index = 0;
  int deriv_order = 0;  // j
  Trig trig = Trig::none;
};

inline BigInt falling_factorial(std::uint64_t n, int j) {
  BigInt result = 1;
  for (int i = 0; i < j; ++i) {
    if (static_cast<std::uint64_t>(i) > n) return 0;
    result *= BigInt(n - static_cast<std::uint64_t>(i));
  }
  return result;
}

/// Deterministic integer powering on doubles (std::pow is not relied on
/// for exact small-integer behaviour).
inline double ipow(double base, std::uint64_t e) {
  double result = 1.0;
  double b = base;
  while (e != 0) {
    if (e & 1u) result *= b;
    e >>= 1u;
    if (e != 0) b *= b;
  }
  return result;
}

inline double eval_basis(const std::vector<Root>& roots, const BasisFunction& b,
                         std::uint64_t n) {
  const Root& root = roots[b.root_index];
  int j = b.deriv_order;
  double falling = falling_factorial(n, j).convert_to<double>();
  if (falling == 0.0) return 0.0;
  std::uint64_t e = n - static_cast<std::uint64_t>(j);
  switch (root.kind) {
    case RootKind::rational:
      return falling * ipow(root.rational_value.to_double(), e);
    case RootKind::real_irrational:
      return falling * ipow(root.real_value, e);
    case RootKind::complex_pair: {
      double arg = static_cast<double>(e) * root.angle;
      double trig = b.trig == Trig::cos ? std::cos(arg) : std::sin(arg);
      return falling * ipow(root.radius, e) * trig;
    }
  }
  return 0.0;
}

inline Rational eval_basis_exact(const std::vector<Root>& roots, const BasisFunction& b,
                                 std::uint64_t n) {
  const Root& root = roots[b.root_index];
  if (root.kind != RootKind::rational || b.trig != Trig::none)
    throw InvalidInput("exact basis evaluation needs a rational root");
  int j = b.deriv_order;
  BigInt falling = falling_factorial(n, j);
  if (falling == 0) return Rational(0);
  return Rational(falling) * pow(root.rational_value, n - static_cast<std::uint64_t>(j));
}

struct InterpolationSystem {
  bool exact = false;                             // all roots rational
  std::vector<std::vector<Rational>> exact_rows;  // r x r, only when exact
  std::vector<std::vector<double>> rows;          // r x r, always populated
  std::vector<BasisFunction> rhs;                 // one per row
};

/// Assembles the confluent interpolation system for the unknown
/// coefficients c_0..c_{r-1} of the remainder v(k). Row (root, j) has
/// left-hand entries d^j/dk^j [k^p] at the root, p = 0..r-1; its right
/// hand side is the basis function n^(j) * root^(n-j). A conjugate pair
/// produces a cos row and a sin row per derivative order.
inline InterpolationSystem build_interpolation_system(const std::vector<Root>& roots,
                                                      std::size_t r) {
  std::size_t count = 0;
  for (const Root& root : roots)
    count += static_cast<std::size_t>(root.multiplicity) * (root.counts_double() ? 2 : 1);
  if (count != r)
    throw InvalidInput("root multiset does not match the modulus degree");

  InterpolationSystem sys;
  sys.exact = true;
  for (const Root& root : roots)
    if (root.kind != RootKind::rational) sys.exact = false;

  if (sys.exact) sys.exact_rows.reserve(r);
  sys.rows.reserve(r);

  for (std::size_t idx = 0; idx < roots.size(); ++idx) {
    const Root& root = roots[idx];
    for (int j = 0; j < root.multiplicity; ++j) {
      if (root.kind == RootKind::complex_pair) {
        std::vector<double> cos_row(r, 0.0), sin_row(r, 0.0);
        for (std::size_t p = static_cast<std::size_t>(j); p < r; ++p) {
          double falling =
              falling_factorial(static_cast<std::uint64_t>(p), j).convert_to<double>();
          std::uint64_t e = p - static_cast<std::size_t>(j);
          double arg = static_cast<double>(e) * root.angle;
          double mag = falling * ipow(root.radius, e);
          cos_row[p] = mag * std::cos(arg);
          sin_row[p] = mag * std::sin(arg);
        }
        sys.rows.push_back(std::move(cos_row));
        sys.rhs.push_back(BasisFunction{idx, j, Trig::cos});
        sys.rows.push_back(std::move(sin_row));
        sys.rhs.push_back(BasisFunction{idx, j, Trig::sin});
        continue;
      }
      if (root.kind == RootKind::rational) {
        std::vector<Rational> row(r);
        for (std::size_t p = static_cast<std::size_t>(j); p < r; ++p)
          row[p] = Rational(falling_factorial(static_cast<std::uint64_t>(p), j)) *
                   pow(root.rational_value, p - static_cast<std::size_t>(j));
        if (sys.exact) {
          std::vector<double> drow(r);
          for (std::size_t p = 0; p < r; ++p) drow[p] = row[p].to_double();
          sys.rows.push_back(std::move(drow));
          sys.exact_rows.push_back(std::move(row));
        } else {
          std::vector<double> drow(r);
          for (std::size_t p = 0; p < r; ++p) drow[p] = row[p].to_double();
          sys.rows.push_back(std::move(drow));
        }
      } else {
        std::vector<double> row(r, 0.0);
        for (std::size_t p = static_cast<std::size_t>(j); p < r; ++p)
          row[p] =
              falling_factorial(static_cast<std::uint64_t>(p), j).convert_to<double>() *
              ipow(root.real_value, p - static_cast<std::size_t>(j));
        sys.rows.push_back(std::move(row));
      }
      sys.rhs.push_back(BasisFunction{idx, j, Trig::none});
    }
  }
  return sys;
}

namespace detail {

/// Exact inverse by row reduction of [M | I].
inline std::vector<std::vector<Rational>> invert_exact(
    const std::vector<std::vector<Rational>>& m) {
  std::size_t r = m.size();
  Grid aug(r, std::vector<Rational>(2 * r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug[i][j] = m[i][j];
    aug[i][r + i] = Rational(1);
  }
  RrefResult red = rref(std::move(aug));
  for (std::size_t i = 0; i < r; ++i)
    if (i >= red.rank || red.pivot_cols[i] != i)
      throw SingularSystem("interpolation system is singular");
  std::vector<std::vector<Rational>> inv(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) inv[i][j] = red.rref[i][r + j];
  return inv;
}

/// Numeric inverse by Gauss-Jordan with full pivoting.
inline std::vector<std::vector<double>> invert_numeric(std::vector<std::vector<double>> m) {
  std::size_t r = m.size();
  std::vector<std::vector<double>> rhs(r, std::vector<double>(r, 0.0));
  for (std::size_t i = 0; i < r; ++i) rhs[i][i] = 1.0;
  std::vector<std::size_t> col_of(r);
  for (std::size_t i = 0; i < r; ++i) col_of[i] = i;

  for (std::size_t s = 0; s < r; ++s) {
    std::size_t best_i = s, best_j = s;
    double best = 0.0;
    for (std::size_t i = s; i < r; ++i)
      for (std::size_t j = s; j < r; ++j)
        if (std::abs(m[i][j]) > best) {
          best = std::abs(m[i][j]);
          best_i = i;
          best_j = j;
        }
    if (best == 0.0) throw SingularSystem("interpolation system is numerically singular");
    std::swap(m[s], m[best_i]);
    std::swap(rhs[s], rhs[best_i]);
    if (best_j != s) {
      for (std::size_t i = 0; i < r; ++i) std::swap(m[i][s], m[i][best_j]);
      std::swap(col_of[s], col_of[best_j]);
    }
    double pivot = m[s][s];
    for (std::size_t j = 0; j < r; ++j) {
      m[s][j] /= pivot;
      rhs[s][j] /= pivot;
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (i == s || m[i][s] == 0.0) continue;
      double factor = m[i][s];
      for (std::size_t j = 0; j < r; ++j) {
        m[i][j] -= factor * m[s][j];
        rhs[i][j] -= factor * rhs[s][j];
      }
    }
  }
  // Column swaps permuted the unknowns; undo them on output rows.
  std::vector<std::vector<double>> inv(r);
  for (std::size_t s = 0; s < r; ++s) inv[col_of[s]] = std::move(rhs[s]);
  return inv;
}

}  // namespace detail

enum class ModulusChoice { minimal, characteristic };

/// One additive piece of a matrix entry of A^n:
///   coeff * n^(j) * lambda^(n-j)                      (real bases)
///   coeff * n^(j) * r^(n-j) * {cos,sin}((n-j) * phi)  (conjugate pairs)
/// where j = n_power. coeff_exact is carried whenever the whole solve was
/// exact (all roots rational).
struct Term {
  double coeff = 0.0;
  std::optional<Rational> coeff_exact;
  std::size_t root_index = 0;
  int n_power = 0;
  Trig trig = Trig::none;
  std::size_t basis_index = 0;
};

/// Symbolic form of A^n: per entry, a sum of Terms over the basis
/// functions generated by the modulus polynomial's roots.
struct ClosedForm {
  std::size_t dim = 0;
  Poly modulus;
  std::vector<Root> roots;
  std::vector<BasisFunction> basis;
  std::vector<Mat> powers;                   // A^0 .. A^{r-1}, exact
  std::vector<std::vector<double>> weights;  // weights[p][e]: c_p(n) = sum_e w * basis_e(n)
  std::optional<std::vector<std::vector<Rational>>> weights_exact;
  std::vector<std::vector<std::vector<Term>>> entry_terms;  // [i][j] -> terms

  bool exact() const { return weights_exact.has_value(); }
};

/// Builds the closed form of A^n over the chosen modulus (minimal
/// polynomial by default: fewer unknowns; the characteristic polynomial
/// reproduces the classical degree-m construction). The coefficient
/// functions of v(k) are solved from the interpolation system once; each
/// matrix entry then collects its own combination through the exact
/// powers A^0..A^{r-1}.
inline ClosedForm closed_form(const Mat& a, ModulusChoice choice = ModulusChoice::minimal) {
  ClosedForm cf;
  cf.dim = a.dim();
  cf.modulus = choice == ModulusChoice::minimal ? minimal_polynomial(a).q : charpoly(a);
  std::size_t r = static_cast<std::size_t>(cf.modulus.degree());
  cf.roots = find_roots(cf.modulus);

  InterpolationSystem sys = build_interpolation_system(cf.roots, r);
  cf.basis = sys.rhs;

  if (sys.exact) {
    auto inv = detail::invert_exact(sys.exact_rows);
    cf.weights.assign(r, std::vector<double>(r));
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t e = 0; e < r; ++e) cf.weights[p][e] = inv[p][e].to_double();
    cf.weights_exact = std::move(inv);
  } else {
    cf.weights = detail::invert_numeric(sys.rows);
  }

  cf.powers.reserve(r);
  Mat power = Mat::identity(a.dim());
  for (std::size_t p = 0; p < r; ++p) {
    cf.powers.push_back(power);
    if (p + 1 < r) power = power * a;
  }

  cf.entry_terms.assign(cf.dim, std::vector<std::vector<Term>>(cf.dim));
  for (std::size_t i = 0; i < cf.dim; ++i)
    for (std::size_t j = 0; j < cf.dim; ++j) {
      for (std::size_t e = 0; e < r; ++e) {
        Term term;
        term.basis_index = e;
        term.root_index = cf.basis[e].root_index;
        term.n_power = cf.basis[e].deriv_order;
        term.trig = cf.basis[e].trig;
        if (cf.exact()) {
          Rational c(0);
          for (std::size_t p = 0; p < r; ++p)
            c += (*cf.weights_exact)[p][e] * cf.powers[p](i, j);
          if (c.is_zero()) continue;
          term.coeff_exact = c;
          term.coeff = c.to_double();
        } else {
          double c = 0.0;
          for (std::size_t p = 0; p < r; ++p)
            c += cf.weights[p][e] * cf.powers[p](i, j).to_double();
          if (c == 0.0) continue;
          term.coeff = c;
        }
        cf.entry_terms[i][j].push_back(term);
      }
    }
  return cf;
}

/// Numeric instantiation of the closed form at one exponent.
inline std::vector<std::vector<double>> eval_closed_form(const ClosedForm& cf,
                                                         std::uint64_t n) {
  std::vector<double> basis_vals(cf.basis.size());
  for (std::size_t e = 0; e < cf.basis.size(); ++e)
    basis_vals[e] = eval_basis(cf.roots, cf.basis[e], n);
  std::vector<std::vector<double>> out(cf.dim, std::vector<double>(cf.dim, 0.0));
  for (std::size_t i = 0; i < cf.dim; ++i)
    for (std::size_t j = 0; j < cf.dim; ++j)
      for (const Term& term : cf.entry_terms[i][j])
        out[i][j] += term.coeff * basis_vals[term.basis_index];
  return out;
}

/// Exact instantiation; available precisely when every root is rational.
inline Mat eval_closed_form_exact(const ClosedForm& cf, std::uint64_t n) {
  if (!cf.exact())
    throw InvalidInput("closed form has irrational roots; exact evaluation unavailable");
  std::vector<Rational> basis_vals(cf.basis.size());
  for (std::size_t e = 0; e < cf.basis.size(); ++e)
    basis_vals[e] = eval_basis_exact(cf.roots, cf.basis[e], n);
  Mat out(cf.dim);
  for (std::size_t i = 0; i < cf.dim; ++i)
    for (std::size_t j = 0; j < cf.dim; ++j)
      for (const Term& term : cf.entry_terms[i][j])
        out(i, j) += *term.coeff_exact * basis_vals[term.basis_index];
  return out;
}

/// The solved coefficient function c_p(n) of k^p in v(k).
inline double coefficient_function(const ClosedForm& cf, std::size_t p, std::uint64_t n) {
  double acc = 0.0;
  for (std::size_t e = 0; e < cf.basis.size(); ++e)
    acc += cf.weights[p][e] * eval_basis(cf.roots, cf.basis[e], n);
  return acc;
}

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

inline std::string rational_base_string(const Rational& value) {
  std::string s = value.to_string();
  if (value.sign() < 0 || !value.is_integer()) return "(" + s + ")";
  return s;
}

// Exact radius of a conjugate pair when its quadratic is known: the
// constant term of the monic quadratic is r^2.
inline std::optional<Rational> exact_pair_radius(const Root& root) {
  if (!root.source_quadratic.has_value()) return std::nullopt;
  Poly monic = root.source_quadratic->monic();
  Rational radius;
  if (!exact_sqrt(monic.coeff(0), &radius)) return std::nullopt;
  return radius;
}

inline std::string falling_prefix(int j) {
  std::string out;
  for (int i = 0; i < j; ++i) {
    if (!out.empty()) out += "*";
    out += i == 0 ? "n" : "(n-" + std::to_string(i) + ")";
  }
  return out;
}

inline std::string exponent_suffix(int j) {
  return j == 0 ? "^n" : "^(n-" + std::to_string(j) + ")";
}

inline std::string term_body(const ClosedForm& cf, const Term& term) {
  const Root& root = cf.roots[term.root_index];
  std::string out;
  std::string falling = falling_prefix(term.n_power);
  if (!falling.empty()) out += falling + " * ";
  switch (root.kind) {
    case RootKind::rational:
      out += rational_base_string(root.rational_value) + exponent_suffix(term.n_power);
      break;
    case RootKind::real_irrational: {
      std::string base = format_double(root.real_value);
      if (root.real_value < 0) base = "(" + base + ")";
      out += base + exponent_suffix(term.n_power);
      break;
    }
    case RootKind::complex_pair: {
      std::optional<Rational> radius = exact_pair_radius(root);
      std::string base = radius.has_value() ? rational_base_string(*radius)
                                            : format_double(root.radius);
      out += base + exponent_suffix(term.n_power);
      std::string arg = term.n_power == 0
                            ? "n"
                            : "(n-" + std::to_string(term.n_power) + ")";
      out += " * ";
      out += term.trig == Trig::cos ? "cos" : "sin";
      out += "(" + arg + "*" + format_double(root.angle) + ")";
      break;
    }
  }
  return out;
}

}  // namespace detail

/// One line per entry: "A^n[0][0] = 1/4 * 3^n + 3/4 * (-5)^n".
inline std::string render_closed_form(const ClosedForm& cf) {
  std::string out;
  for (std::size_t i = 0; i < cf.dim; ++i) {
    for (std::size_t j = 0; j < cf.dim; ++j) {
      std::string line = "A^n[" + std::to_string(i) + "][" + std::to_string(j) + "] = ";
      const auto& terms = cf.entry_terms[i][j];
      if (terms.empty()) {
        line += "0";
      } else {
        bool first = true;
        for (const Term& term : terms) {
          bool negative = term.coeff_exact.has_value() ? term.coeff_exact->sign() < 0
                                                       : term.coeff < 0;
          if (first) {
            if (negative) line += "-";
            first = false;
          } else {
            line += negative ? " - " : " + ";
          }
          std::string coeff = term.coeff_exact.has_value()
                                  ? abs(*term.coeff_exact).to_string()
                                  : detail::format_double(std::abs(term.coeff));
          line += coeff + " * " + detail::term_body(cf, term);
        }
      }
      out += line + "\n";
    }
  }
  return out;
}

}  // namespace matpow
