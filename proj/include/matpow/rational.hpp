#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "matpow/error.hpp"

namespace matpow {

using BigInt = boost::multiprecision::cpp_int;

/// Exact arbitrary-precision rational number, always in canonical form:
/// denominator > 0, gcd(|num|, den) = 1, zero is 0/1.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long long v) : value_(v) {}  // NOLINT: implicit by design
  Rational(const BigInt& v) : value_(v) {}

  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    value_.assign(boost::multiprecision::cpp_rational(num, den));
  }

  /// Accepts "p", "-p", "p/q" or "-p/q" with q > 0.
  static Rational parse(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      negative = text[pos] == '-';
      ++pos;
    }
    auto digits = [&](std::string& out) {
      std::size_t start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      out.assign(text.substr(start, pos - start));
      return pos > start;
    };
    std::string num_str, den_str = "1";
    if (!digits(num_str))
      throw ParseError("expected digits in rational: '" + std::string(text) + "'", 0, pos + 1);
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      if (!digits(den_str))
        throw ParseError("expected denominator digits in rational: '" + std::string(text) + "'",
                         0, pos + 1);
    }
    if (pos != text.size())
      throw ParseError("trailing characters in rational: '" + std::string(text) + "'", 0, pos + 1);
    BigInt num(num_str), den(den_str);
    if (negative) num = -num;
    return Rational(num, den);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_.is_zero(); }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return value_ < 0 ? -1 : (value_ > 0 ? 1 : 0); }

  Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
  Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
  Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
  Rational& operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw DivisionByZero();
    value_ /= rhs.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { Rational r; r.value_ = -value_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  double to_double() const { return value_.convert_to<double>(); }

  std::string to_string() const {
    BigInt den = denominator();
    std::string s = numerator().str();
    if (den != 1) s += "/" + den.str();
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  boost::multiprecision::cpp_rational value_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

inline Rational pow(const Rational& base, std::uint64_t exp) {
  // 0^0 = 1 by the usual algebraic convention used throughout.
  Rational result(1);
  Rational b = base;
  std::uint64_t e = exp;
  while (e != 0) {
    if (e & 1u) result *= b;
    e >>= 1u;
    if (e != 0) b *= b;
  }
  return result;
}

/// Bit length of |x|; 0 for x = 0.
inline std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(x)) + 1;
}

/// Exact rational square root when one exists.
inline bool exact_sqrt(const Rational& x, Rational* out) {
  if (x.sign() < 0) return false;
  BigInt n = x.numerator(), d = x.denominator();
  BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  if (out != nullptr) *out = Rational(sn, sd);
  return true;
}

using ComplexF = std::complex<double>;

struct Polar {
  double r;
  double phi;  // in (-pi, pi]
};

/// Polar form of a nonzero complex number. Uses the two-argument arctangent,
/// so every quadrant (including the imaginary axis) is handled.
inline Polar to_polar(const ComplexF& z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InvalidInput("to_polar: non-finite argument");
  if (z.real() == 0.0 && z.imag() == 0.0)
    throw ZeroArgument("to_polar: zero has no polar angle");
  double r = std::hypot(z.real(), z.imag());
  double phi = std::atan2(z.imag(), z.real());
  if (phi <= -3.141592653589793) phi = 3.141592653589793;  // land on (-pi, pi]
  return Polar{r, phi};
}

}  // namespace matpow
