#pragma once

// Node builders that fold numeric constants and the identities
// x+0, x-0, x*1, x*0, x/1, 0/x, x^1, x^0 as trees are built.

#include <cmath>

#include "scalar_ops.hpp"
#include "wpb/expr.hpp"

namespace wpb::detail {

inline Expr num(double v) { return Expr::constant(v); }

inline bool folds(double v) { return std::isfinite(v); }

inline Expr make_unary(Func f, const Expr& a) {
  if (a.is_constant() && !unary_violation(f, a.value())) {
    const double v = apply_unary(f, a.value());
    if (folds(v)) return num(v);
  }
  return Expr::unary(f, a);
}

inline Expr make_binary(BinOp op, const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) {
    const bool bad = (op == BinOp::div && b.value() == 0.0) ||
                     (op == BinOp::pow && power_violation(a.value(), b.value()));
    if (!bad) {
      const double v = apply_binary(op, a.value(), b.value());
      if (folds(v)) return num(v);
    }
  }
  switch (op) {
    case BinOp::add:
      if (a.is_constant(0.0)) return b;
      if (b.is_constant(0.0)) return a;
      break;
    case BinOp::sub:
      if (b.is_constant(0.0)) return a;
      break;
    case BinOp::mul:
      if (a.is_constant(0.0) || b.is_constant(0.0)) return num(0.0);
      if (a.is_constant(1.0)) return b;
      if (b.is_constant(1.0)) return a;
      break;
    case BinOp::div:
      if (b.is_constant(1.0)) return a;
      if (a.is_constant(0.0) && !b.is_constant(0.0)) return num(0.0);
      break;
    case BinOp::pow:
      if (b.is_constant(1.0)) return a;
      if (b.is_constant(0.0)) return num(1.0);
      break;
  }
  return Expr::binary(op, a, b);
}

inline Expr add(const Expr& a, const Expr& b) { return make_binary(BinOp::add, a, b); }
inline Expr sub(const Expr& a, const Expr& b) { return make_binary(BinOp::sub, a, b); }
inline Expr mul(const Expr& a, const Expr& b) { return make_binary(BinOp::mul, a, b); }
inline Expr div(const Expr& a, const Expr& b) { return make_binary(BinOp::div, a, b); }
inline Expr pw(const Expr& a, const Expr& b) { return make_binary(BinOp::pow, a, b); }
inline Expr neg(const Expr& a) { return make_binary(BinOp::sub, num(0.0), a); }

}  // namespace wpb::detail
