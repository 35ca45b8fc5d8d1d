#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "matpow/error.hpp"
#include "matpow/polynomial.hpp"
#include "matpow/rational.hpp"

namespace matpow {

enum class RootKind { rational, real_irrational, complex_pair };

/// One eigenvalue of the modulus polynomial, with its multiplicity taken
/// from the square-free decomposition. A complex_pair stands for the two
/// conjugate roots r*(cos phi +- i sin phi); only the upper-half-plane
/// representative (0 < phi < pi) is stored.
struct Root {
  RootKind kind = RootKind::rational;
  Rational rational_value;  // kind == rational
  double real_value = 0.0;  // kind == real_irrational
  double radius = 0.0;      // kind == complex_pair
  double angle = 0.0;       // kind == complex_pair, in (0, pi)
  // The exact quadratic this root was solved from, when one exists.
  // Roots of higher-degree irreducible factors are located numerically
  // and carry no quadratic.
  std::optional<Poly> source_quadratic;
  int multiplicity = 1;

  bool counts_double() const { return kind == RootKind::complex_pair; }

  double modulus() const {
    switch (kind) {
      case RootKind::rational: return std::abs(rational_value.to_double());
      case RootKind::real_irrational: return std::abs(real_value);
      case RootKind::complex_pair: return radius;
    }
    return 0.0;
  }

  ComplexF approx() const {
    switch (kind) {
      case RootKind::rational: return ComplexF(rational_value.to_double(), 0.0);
      case RootKind::real_irrational: return ComplexF(real_value, 0.0);
      case RootKind::complex_pair:
        return ComplexF(radius * std::cos(angle), radius * std::sin(angle));
    }
    return ComplexF(0.0, 0.0);
  }
};

namespace detail {

// All positive divisors of |n|, n != 0. Trial division; the loop is capped
// so a pathologically large coefficient degrades to the numeric fallback
// instead of stalling (divisors beyond the cap are unreachable anyway for
// the matrix sizes this library targets).
inline std::vector<BigInt> positive_divisors(BigInt n) {
  n = boost::multiprecision::abs(n);
  std::vector<BigInt> divs;
  const BigInt cap = BigInt(1) << 21;
  for (BigInt i = 1; i * i <= n && i <= cap; ++i) {
    if (n % i == 0) {
      divs.push_back(i);
      BigInt other = n / i;
      if (other != i) divs.push_back(other);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Scale a rational-coefficient polynomial to a primitive integer one
// (same roots).
inline std::vector<BigInt> primitive_integer_coeffs(const Poly& f) {
  BigInt lcm_den = 1;
  for (const Rational& c : f.coeffs())
    lcm_den = boost::multiprecision::lcm(lcm_den, c.denominator());
  std::vector<BigInt> ints(f.coeffs().size());
  BigInt content = 0;
  for (std::size_t i = 0; i < ints.size(); ++i) {
    Rational scaled = Rational(lcm_den) * f.coeff(i);
    ints[i] = scaled.numerator();  // denominator is 1 by construction
    content = boost::multiprecision::gcd(content, ints[i]);
  }
  if (content > 1)
    for (BigInt& c : ints) c /= content;
  return ints;
}

// Extracts every rational root of a square-free polynomial exactly, by
// the rational root theorem: p/q with p | a_0 and q | a_d. Deflates f as
// roots are found and returns the rational-root-free remainder.
inline Poly extract_rational_roots(Poly f, std::vector<Rational>* found) {
  // Roots at zero first: they make the constant term vanish.
  while (f.degree() >= 1 && f.coeff(0).is_zero()) {
    found->push_back(Rational(0));
    f = poly_divrem(f, Poly::identity_k()).quot;
  }
  if (f.degree() < 1) return f;
  if (f.degree() == 1) {
    found->push_back(-f.coeff(0) / f.coeff(1));
    return Poly::one();
  }

  std::vector<BigInt> ints = primitive_integer_coeffs(f);
  std::vector<BigInt> ps = positive_divisors(ints.front());
  std::vector<BigInt> qs = positive_divisors(ints.back());
  for (const BigInt& p : ps) {
    for (const BigInt& q : qs) {
      for (int s : {1, -1}) {
        Rational candidate(s * p, q);
        if (f.degree() >= 1 && f.eval(candidate).is_zero()) {
          found->push_back(candidate);
          f = poly_divrem(f, Poly({-candidate, Rational(1)})).quot;
        }
      }
      if (f.degree() < 1) return f;
      // Degree-one leftovers always have a rational root; take it directly.
      if (f.degree() == 1) {
        found->push_back(-f.coeff(0) / f.coeff(1));
        return Poly::one();
      }
    }
  }
  return f;
}

// Monic quadratic k^2 + pk + q with no rational roots.
inline std::vector<Root> solve_quadratic(const Poly& f) {
  Rational p = f.coeff(1), q = f.coeff(0);
  Rational disc = p * p - Rational(4) * q;
  std::vector<Root> out;
  if (disc.sign() > 0) {
    // Two distinct real roots. A rational discriminant square would have
    // been caught by the rational-root pass, but guard anyway.
    Rational sq;
    if (exact_sqrt(disc, &sq)) {
      for (const Rational& value : {(-p + sq) / Rational(2), (-p - sq) / Rational(2)}) {
        Root root;
        root.kind = RootKind::rational;
        root.rational_value = value;
        root.source_quadratic = f;
        out.push_back(root);
      }
      return out;
    }
    double sd = std::sqrt(disc.to_double());
    double pd = p.to_double();
    for (double value : {(-pd + sd) / 2.0, (-pd - sd) / 2.0}) {
      Root root;
      root.kind = RootKind::real_irrational;
      root.real_value = value;
      root.source_quadratic = f;
      out.push_back(root);
    }
    return out;
  }
  // Conjugate pair: re = -p/2, im = sqrt(-disc)/2 > 0.
  double re = (-p / Rational(2)).to_double();
  double im = std::sqrt((-disc).to_double()) / 2.0;
  Polar polar = to_polar(ComplexF(re, im));
  Root root;
  root.kind = RootKind::complex_pair;
  root.radius = polar.r;
  root.angle = polar.phi;
  root.source_quadratic = f;
  out.push_back(root);
  return out;
}

// Durand-Kerner iteration on a monic square-free factor of degree >= 3.
// Start points sit on a circle of radius 1 + max|coeff|, rotated off the
// axes so real-root symmetry cannot trap the iteration.
inline std::vector<ComplexF> durand_kerner(const Poly& f) {
  int d = f.degree();
  double max_coeff = 0.0;
  for (const Rational& c : f.coeffs())
    max_coeff = std::max(max_coeff, std::abs(c.to_double()));
  double radius = 1.0 + max_coeff;
  constexpr double kPi = 3.14159265358979323846;
  constexpr double kAngleOffset = 0.4;

  std::vector<ComplexF> z(d);
  for (int j = 0; j < d; ++j) {
    double theta = 2.0 * kPi * j / d + kAngleOffset;
    z[j] = ComplexF(radius * std::cos(theta), radius * std::sin(theta));
  }

  constexpr int kMaxIter = 500;
  constexpr double kStepTol = 1e-13;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double max_step = 0.0;
    for (int j = 0; j < d; ++j) {
      ComplexF denom(1.0, 0.0);
      for (int l = 0; l < d; ++l)
        if (l != j) denom *= z[j] - z[l];
      if (denom == ComplexF(0.0, 0.0))
        throw RootFindingDiverged("coincident iterates in Durand-Kerner");
      ComplexF step = f.eval(z[j]) / denom;
      z[j] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    if (max_step < kStepTol) break;
  }

  for (const ComplexF& root : z)
    if (std::abs(f.eval(root)) >= 1e-10)
      throw RootFindingDiverged("Durand-Kerner residual check failed");
  return z;
}

// Classify numeric roots of one square-free factor: near-real points
// become real roots, the rest must pair up into conjugates.
inline std::vector<Root> classify_numeric_roots(const Poly& f) {
  std::vector<ComplexF> z = durand_kerner(f);
  constexpr double kImagTol = 1e-10;
  constexpr double kSeparationTol = 1e-8;

  // Distinct roots of a square-free factor must stay distinct numerically;
  // a collision means the iteration cannot be trusted. Multiplicities are
  // never inferred from clustering.
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (std::abs(z[i] - z[j]) < kSeparationTol)
        throw RootFindingDiverged("numeric roots of a square-free factor collided");

  std::vector<Root> out;
  std::vector<ComplexF> upper;
  for (const ComplexF& root : z) {
    if (std::abs(root.imag()) <= kImagTol) {
      Root r;
      r.kind = RootKind::real_irrational;
      r.real_value = root.real();
      out.push_back(r);
    } else if (root.imag() > 0.0) {
      upper.push_back(root);
    }
  }
  // Pair each upper-half root with its conjugate.
  std::vector<ComplexF> lower;
  for (const ComplexF& root : z)
    if (root.imag() < -kImagTol) lower.push_back(root);
  if (lower.size() != upper.size())
    throw RootFindingDiverged("complex roots of a real polynomial failed to pair up");
  for (const ComplexF& u : upper) {
    bool matched = false;
    for (const ComplexF& l : lower) {
      if (std::abs(u.real() - l.real()) <= kImagTol && std::abs(u.imag() + l.imag()) <= kImagTol) {
        matched = true;
        break;
      }
    }
    if (!matched) throw RootFindingDiverged("complex root has no conjugate partner");
    Polar polar = to_polar(u);
    Root r;
    r.kind = RootKind::complex_pair;
    r.radius = polar.r;
    r.angle = polar.phi;
    out.push_back(r);
  }
  return out;
}

inline int kind_rank(RootKind kind) {
  switch (kind) {
    case RootKind::rational: return 0;
    case RootKind::real_irrational: return 1;
    case RootKind::complex_pair: return 2;
  }
  return 3;
}

inline bool root_order(const Root& a, const Root& b) {
  if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
  if (a.kind != b.kind) return kind_rank(a.kind) < kind_rank(b.kind);
  switch (a.kind) {
    case RootKind::rational: return a.rational_value < b.rational_value;
    case RootKind::real_irrational: return a.real_value < b.real_value;
    case RootKind::complex_pair:
      if (a.radius != b.radius) return a.radius < b.radius;
      return a.angle < b.angle;
  }
  return false;
}

}  // namespace detail

/// Every root of q with its multiplicity. Multiplicities come from the
/// square-free decomposition; within each square-free factor, rational
/// roots are extracted exactly, leftover quadratics are solved by the
/// discriminant formula, and anything of higher degree goes to the
/// Durand-Kerner fallback. Output is ordered by descending multiplicity,
/// then kind, then value.
inline std::vector<Root> find_roots(const Poly& q) {
  if (q.degree() < 1) throw InvalidInput("root finding needs degree >= 1");
  std::vector<Root> roots;
  for (const SquareFreeFactor& sf : square_free_decompose(q)) {
    std::vector<Rational> rational_roots;
    Poly rest = detail::extract_rational_roots(sf.factor, &rational_roots);
    std::vector<Root> factor_roots;
    for (const Rational& value : rational_roots) {
      Root root;
      root.kind = RootKind::rational;
      root.rational_value = value;
      factor_roots.push_back(root);
    }
    if (rest.degree() == 2) {
      for (Root& root : detail::solve_quadratic(rest.monic())) factor_roots.push_back(root);
    } else if (rest.degree() > 2) {
      for (Root& root : detail::classify_numeric_roots(rest.monic()))
        factor_roots.push_back(root);
    }
    for (Root& root : factor_roots) {
      root.multiplicity = sf.multiplicity;
      // Residual sanity: exact roots vanish exactly (checked during
      // extraction); numeric ones must nearly vanish on their factor.
      if (root.kind != RootKind::rational &&
          std::abs(sf.factor.eval(root.approx())) >= 1e-10)
        throw RootFindingDiverged("root residual exceeds tolerance");
      roots.push_back(std::move(root));
    }
  }

  int degree_sum = 0;
  for (const Root& root : roots)
    degree_sum += root.multiplicity * (root.counts_double() ? 2 : 1);
  if (degree_sum != q.degree())
    throw InternalError("root multiset does not account for the full degree");

  std::sort(roots.begin(), roots.end(), detail::root_order);
  return roots;
}

}  // namespace matpow
