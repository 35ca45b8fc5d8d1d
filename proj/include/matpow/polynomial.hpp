#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "matpow/error.hpp"
#include "matpow/rational.hpp"

namespace matpow {

/// Dense univariate polynomial over Rational. coeff(i) multiplies k^i.
/// Canonical form: the zero polynomial stores no coefficients, any other
/// polynomial has a nonzero leading coefficient.
class Poly {
 public:
  Poly() = default;

  Poly(std::initializer_list<Rational> ascending)
      : coeffs_(ascending) {
    trim();
  }

  explicit Poly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly one() { return constant(Rational(1)); }
  static Poly constant(const Rational& c) { return Poly({c}); }
  static Poly identity_k() { return Poly({Rational(0), Rational(1)}); }

  static Poly monomial(std::size_t degree, const Rational& c) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Coefficient of k^i; zero beyond the stored degree.
  const Rational& coeff(std::size_t i) const {
    static const Rational kZero(0);
    return i < coeffs_.size() ? coeffs_[i] : kZero;
  }

  const std::vector<Rational>& coeffs() const { return coeffs_; }

  const Rational& leading() const {
    if (is_zero()) throw InvalidInput("leading coefficient of zero polynomial");
    return coeffs_.back();
  }

  bool is_monic() const { return !is_zero() && coeffs_.back() == Rational(1); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(c));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(c));
  }

  Poly operator-() const {
    std::vector<Rational> c(coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
    return Poly(std::move(c));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(c));
  }

  friend Poly operator*(const Rational& s, const Poly& p) {
    if (s.is_zero()) return Poly();
    std::vector<Rational> c(p.coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * p.coeffs_[i];
    return Poly(std::move(c));
  }

  Poly monic() const {
    if (is_zero()) throw InvalidInput("cannot normalize zero polynomial");
    return (Rational(1) / leading()) * *this;
  }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rational> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      c[i - 1] = Rational(BigInt(i)) * coeffs_[i];
    return Poly(std::move(c));
  }

  /// Horner evaluation.
  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  ComplexF eval(const ComplexF& x) const {
    ComplexF acc(0.0, 0.0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i].to_double();
    return acc;
  }

  double eval(double x) const {
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i].to_double();
    return acc;
  }

  /// "k^3 + 4*k^2 + 3*k - 8": descending powers, p/q coefficients,
  /// zero terms omitted, unit coefficients on powers omitted.
  std::string to_string(const std::string& var = "k") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const Rational& c = coeffs_[i];
      if (c.is_zero()) continue;
      bool negative = c.sign() < 0;
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      Rational mag = abs(c);
      std::string power;
      if (i == 1) power = var;
      else if (i > 1) power = var + "^" + std::to_string(i);
      if (power.empty()) out += mag.to_string();
      else if (mag == Rational(1)) out += power;
      else out += mag.to_string() + "*" + power;
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

struct PolyDivRem {
  Poly quot;
  Poly rem;
};

/// Exact Euclidean division: num = den * quot + rem, deg(rem) < deg(den).
inline PolyDivRem poly_divrem(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (num.degree() < den.degree()) return {Poly(), num};
  std::vector<Rational> rem(num.coeffs());
  std::vector<Rational> quot(num.degree() - den.degree() + 1);
  const Rational& lead = den.leading();
  for (std::size_t i = quot.size(); i-- > 0;) {
    Rational q = rem[i + den.degree()] / lead;
    quot[i] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= den.degree(); ++j)
      rem[i + j] -= q * den.coeff(j);
  }
  rem.resize(den.degree() < 0 ? 0 : den.degree());
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

/// Monic greatest common divisor via the Euclidean algorithm.
inline Poly poly_gcd(Poly a, Poly b) {
  if (a.is_zero() && b.is_zero()) throw BothZero();
  while (!b.is_zero()) {
    Poly r = poly_divrem(a, b).rem;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

struct ModPowStats {
  std::uint64_t ring_mults = 0;
};

/// k^n mod q by left-to-right binary exponentiation in Q[k]/(q); the
/// quotient of the long division is never formed. Reduction happens after
/// every multiply, so intermediate degrees stay below 2*deg(q). Uses at
/// most 2*ceil(log2 n) ring multiplications, tallied in `stats`.
inline Poly poly_modpow(std::uint64_t n, const Poly& q, ModPowStats* stats = nullptr) {
  if (q.degree() < 1) throw InvalidModulus("modulus must have degree >= 1");
  Poly m = q.is_monic() ? q : q.monic();
  auto reduce = [&m](const Poly& p) { return poly_divrem(p, m).rem; };
  if (n == 0) return Poly::one();
  Poly k = Poly::identity_k();
  Poly v = reduce(k);
  int top = 63;
  while (((n >> top) & 1u) == 0) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    v = reduce(v * v);
    if (stats != nullptr) ++stats->ring_mults;
    if ((n >> bit) & 1u) {
      v = reduce(v * k);
      if (stats != nullptr) ++stats->ring_mults;
    }
  }
  return v;
}

struct SquareFreeFactor {
  Poly factor;       // monic, square-free
  int multiplicity;  // >= 1
};

/// Yun's characteristic-zero square-free decomposition:
/// input = lc * prod factor_i ^ multiplicity_i with pairwise coprime,
/// square-free, monic factors, ordered by increasing multiplicity.
inline std::vector<SquareFreeFactor> square_free_decompose(const Poly& p) {
  if (p.degree() < 1) throw InvalidInput("square-free decomposition needs degree >= 1");
  Poly f = p.monic();
  Poly g = poly_gcd(f, f.derivative());
  std::vector<SquareFreeFactor> out;
  if (g.degree() == 0) {
    out.push_back({f, 1});
    return out;
  }
  Poly b = poly_divrem(f, g).quot;
  Poly c = poly_divrem(f.derivative(), g).quot;
  Poly d = c - b.derivative();
  int guard = f.degree() + 1;
  for (int i = 1; b.degree() > 0; ++i) {
    if (--guard < 0) throw InternalError("square-free decomposition failed to terminate");
    Poly a = poly_gcd(b, d);
    if (a.degree() > 0) out.push_back({a, i});
    b = poly_divrem(b, a).quot;
    c = poly_divrem(d, a).quot;
    d = c - b.derivative();
  }
  return out;
}

}  // namespace matpow
