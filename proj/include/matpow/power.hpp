#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "matpow/error.hpp"
#include "matpow/matrix.hpp"
#include "matpow/minpoly.hpp"
#include "matpow/polynomial.hpp"

namespace matpow {

enum class PowerMethod {
  via_minpoly,    // k^n mod q(k) evaluated at A; the fast path
  via_charpoly,   // same with the characteristic polynomial as modulus
  binary_matrix,  // square-and-multiply on the matrix itself
  naive           // n successive multiplications; the reference oracle
};

inline const char* method_name(PowerMethod m) {
  switch (m) {
    case PowerMethod::via_minpoly: return "via_minpoly";
    case PowerMethod::via_charpoly: return "via_charpoly";
    case PowerMethod::binary_matrix: return "binary_matrix";
    case PowerMethod::naive: return "naive";
  }
  throw InvalidInput("unknown power method");
}

inline PowerMethod method_from_name(const std::string& name) {
  if (name == "via_minpoly") return PowerMethod::via_minpoly;
  if (name == "via_charpoly") return PowerMethod::via_charpoly;
  if (name == "binary_matrix") return PowerMethod::binary_matrix;
  if (name == "naive") return PowerMethod::naive;
  throw InvalidInput("unknown power method '" + name + "'");
}

struct PowerStats {
  std::uint64_t ring_mults = 0;  // quotient-ring multiplications performed
};

/// Exact A^n. The modulus-based methods reduce k^n modulo an annihilating
/// polynomial and evaluate the remainder at A, so the exponent enters only
/// logarithmically; A^n = v(A) because the modulus annihilates A.
inline Mat matrix_power(const Mat& a, std::uint64_t n,
                        PowerMethod method = PowerMethod::via_minpoly,
                        PowerStats* stats = nullptr) {
  switch (method) {
    case PowerMethod::via_minpoly:
    case PowerMethod::via_charpoly: {
      Poly modulus = method == PowerMethod::via_minpoly ? minimal_polynomial(a).q : charpoly(a);
      ModPowStats mp;
      Poly v = poly_modpow(n, modulus, &mp);
      if (stats != nullptr) stats->ring_mults = mp.ring_mults;
      if (v.degree() >= modulus.degree())
        throw InternalError("power remainder not reduced below the modulus degree");
      return eval_poly_at_matrix(v, a);
    }
    case PowerMethod::binary_matrix: {
      Mat result = Mat::identity(a.dim());
      Mat base = a;
      std::uint64_t e = n;
      while (e != 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e != 0) base = base * base;
      }
      return result;
    }
    case PowerMethod::naive: {
      Mat result = Mat::identity(a.dim());
      for (std::uint64_t i = 0; i < n; ++i) result = result * a;
      return result;
    }
  }
  throw InvalidInput("unknown power method");
}

/// Max over entries of the numerator/denominator bit length; the operand
/// size that drives exact-arithmetic cost.
inline std::size_t max_bit_length(const Mat& m) {
  std::size_t bits = 0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      bits = std::max(bits, bit_length(m(i, j).numerator()));
      bits = std::max(bits, bit_length(m(i, j).denominator()));
    }
  return bits;
}

struct BenchRow {
  PowerMethod method;
  std::uint64_t n;
  std::uint64_t wall_ns;
  std::size_t max_bits;
};

/// Times every method at every requested exponent. All results are checked
/// for exact equality first; a disagreement aborts the run, since a timing
/// table for inconsistent answers is worthless.
inline std::vector<BenchRow> bench_power_methods(const Mat& a,
                                                 const std::vector<std::uint64_t>& n_values) {
  static constexpr PowerMethod kMethods[] = {
      PowerMethod::via_minpoly, PowerMethod::via_charpoly, PowerMethod::binary_matrix,
      PowerMethod::naive};
  std::vector<BenchRow> rows;
  for (std::uint64_t n : n_values) {
    std::vector<Mat> results;
    std::vector<std::uint64_t> times;
    for (PowerMethod method : kMethods) {
      auto start = std::chrono::steady_clock::now();
      results.push_back(matrix_power(a, n, method));
      auto stop = std::chrono::steady_clock::now();
      times.push_back(static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()));
    }
    for (std::size_t i = 1; i < results.size(); ++i)
      if (results[i] != results[0])
        throw MismatchDetected(std::string("power methods disagree: ") +
                               method_name(kMethods[i]) + " vs " + method_name(kMethods[0]) +
                               " at n = " + std::to_string(n));
    for (std::size_t i = 0; i < results.size(); ++i)
      rows.push_back(BenchRow{kMethods[i], n, times[i], max_bit_length(results[i])});
  }
  std::sort(rows.begin(), rows.end(), [](const BenchRow& x, const BenchRow& y) {
    if (x.method != y.method) return static_cast<int>(x.method) < static_cast<int>(y.method);
    return x.n < y.n;
  });
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "method,n,wall_ns,max_bits\n";
  for (const BenchRow& row : rows) {
    out += method_name(row.method);
    out += "," + std::to_string(row.n);
    out += "," + std::to_string(row.wall_ns);
    out += "," + std::to_string(row.max_bits);
    out += "\n";
  }
  return out;
}

}  // namespace matpow
