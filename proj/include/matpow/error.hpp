#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace matpow {

// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

struct ZeroArgument : Error {
  explicit ZeroArgument(const std::string& what) : Error(what) {}
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& what) : Error(what) {}
};

struct InvalidModulus : Error {
  explicit InvalidModulus(const std::string& what) : Error(what) {}
};

struct BothZero : Error {
  BothZero() : Error("gcd of two zero polynomials") {}
};

struct DimMismatch : Error {
  explicit DimMismatch(const std::string& what) : Error(what) {}
};

struct RootFindingDiverged : Error {
  explicit RootFindingDiverged(const std::string& what) : Error(what) {}
};

struct SingularSystem : Error {
  explicit SingularSystem(const std::string& what) : Error(what) {}
};

struct NotStochastic : Error {
  explicit NotStochastic(const std::string& what) : Error(what) {}
};

struct NoLimit : Error {
  explicit NoLimit(const std::string& what) : Error(what) {}
};

struct MismatchDetected : Error {
  explicit MismatchDetected(const std::string& what) : Error(what) {}
};

// Malformed textual input. line/column are 1-based; 0 means unknown.
struct ParseError : Error {
  std::size_t line = 0;
  std::size_t column = 0;
  explicit ParseError(const std::string& what, std::size_t line_ = 0,
                      std::size_t column_ = 0)
      : Error(what), line(line_), column(column_) {}
};

struct DimError : Error {
  explicit DimError(const std::string& what) : Error(what) {}
};

// A broken internal invariant; indicates a bug, not bad input.
struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace matpow
