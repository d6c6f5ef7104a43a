#pragma once

// Scalar semantics shared by the tree evaluator and the compiled tape, so
// both produce bit-identical results.

#include <cmath>
#include <optional>

#include "wpb/error.hpp"
#include "wpb/expr.hpp"
#include "wpb/special.hpp"

namespace wpb::detail {

inline bool is_small_int_exponent(double y) {
  return y == -2.0 || y == -1.0 || y == 0.0 || y == 1.0 || y == 2.0 || y == 3.0 || y == 4.0;
}

inline double power(double x, double y) {
  if (y == 2.0) return x * x;
  if (y == 3.0) return (x * x) * x;
  if (y == 4.0) {
    const double s = x * x;
    return s * s;
  }
  if (y == 1.0) return x;
  if (y == 0.0) return 1.0;
  if (y == -1.0) return 1.0 / x;
  if (y == -2.0) return 1.0 / (x * x);
  return std::pow(x, y);
}

/// Domain violation of x^y, if any. Overflow is detected separately.
inline std::optional<DomainError::Kind> power_violation(double x, double y) {
  if (x == 0.0 && y < 0.0) return DomainError::Kind::pole;
  if (x < 0.0 && y != std::trunc(y)) return DomainError::Kind::argument;
  return std::nullopt;
}

inline double apply_unary(Func f, double x) {
  switch (f) {
    case Func::sin: return std::sin(x);
    case Func::cos: return std::cos(x);
    case Func::tan: return std::tan(x);
    case Func::exp: return std::exp(x);
    case Func::ln: return std::log(x);
    case Func::sqrt: return std::sqrt(x);
    case Func::abs: return std::abs(x);
    case Func::arcsin: return std::asin(x);
    case Func::arccos: return std::acos(x);
    case Func::arctan: return std::atan(x);
    case Func::erf: return special::erf(x);
    case Func::besseli0: return special::bessel_i0(x);
    case Func::besseli1: return special::bessel_i1(x);
    case Func::sgn: return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  }
  return x;
}

inline std::optional<DomainError::Kind> unary_violation(Func f, double x) {
  switch (f) {
    case Func::sqrt:
      if (x < 0.0) return DomainError::Kind::argument;
      break;
    case Func::ln:
      if (x < 0.0) return DomainError::Kind::argument;
      if (x == 0.0) return DomainError::Kind::pole;
      break;
    case Func::arcsin:
    case Func::arccos:
      if (!(x >= -1.0 && x <= 1.0)) return DomainError::Kind::argument;
      break;
    default:
      break;
  }
  return std::nullopt;
}

inline double apply_binary(BinOp op, double a, double b) {
  switch (op) {
    case BinOp::add: return a + b;
    case BinOp::sub: return a - b;
    case BinOp::mul: return a * b;
    case BinOp::div: return a / b;
    case BinOp::pow: return power(a, b);
  }
  return a;
}

}  // namespace wpb::detail
