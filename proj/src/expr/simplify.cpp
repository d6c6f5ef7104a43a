// Rewrite set, applied bottom-up and repeated until nothing changes:
//
//   constant folding of numeric literals (named constants stay symbolic)
//   x+0 -> x, x-0 -> x, x*1 -> x, x*0 -> 0, x/1 -> x, 0/x -> 0, x^1 -> x, x^0 -> 1
//   cos(arccos(u))       -> u
//   sin(arccos(u))       -> sqrt(1 - u^2)
//   sin(arccos(u))^(2k)  -> (1 - u^2)^k
//   sqrt(u)^(2k)         -> u^k
//   (a/b)^n, (a*b)^n     -> a^n/b^n, a^n*b^n   only when a or b is a sqrt and n is even
//
// Every rule either removes a node or pushes an even power towards a sqrt
// that it then cancels, so the pass count is bounded by the tree size.

#include <cmath>

#include "build.hpp"
#include "wpb/expr.hpp"

namespace wpb {

using namespace detail;

namespace {

bool is_even_power(const Expr& exponent) {
  if (!exponent.is_constant()) return false;
  const double n = exponent.value();
  return n >= 2.0 && n == std::trunc(n) && std::fmod(n, 2.0) == 0.0 && n < 1e15;
}

Expr one_minus_square(const Expr& u) { return sub(num(1.0), pw(u, num(2.0))); }

Expr rewrite_unary(Func f, const Expr& a) {
  if (a.is_unary(Func::arccos)) {
    if (f == Func::cos) return a.arg();
    if (f == Func::sin) return make_unary(Func::sqrt, one_minus_square(a.arg()));
  }
  return make_unary(f, a);
}

Expr rewrite_power(const Expr& base, const Expr& exponent);

Expr distribute_power(BinOp op, const Expr& a, const Expr& b, const Expr& exponent) {
  return make_binary(op, rewrite_power(a, exponent), rewrite_power(b, exponent));
}

Expr rewrite_power(const Expr& base, const Expr& exponent) {
  if (is_even_power(exponent)) {
    const Expr half = num(exponent.value() / 2.0);
    if (base.is_unary(Func::sqrt)) return pw(base.arg(), half);
    if (base.is_unary(Func::sin) && base.arg().is_unary(Func::arccos)) {
      return pw(one_minus_square(base.arg().arg()), half);
    }
    if (base.is_binary(BinOp::div) || base.is_binary(BinOp::mul)) {
      const bool has_root = base.lhs().is_unary(Func::sqrt) || base.rhs().is_unary(Func::sqrt);
      if (has_root) return distribute_power(base.op(), base.lhs(), base.rhs(), exponent);
    }
  }
  return pw(base, exponent);
}

Expr pass(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::unary: return rewrite_unary(e.func(), pass(e.arg()));
    case Expr::Kind::binary: {
      if (e.op() == BinOp::pow && is_even_power(e.rhs()) && e.lhs().is_unary(Func::sin) &&
          e.lhs().arg().is_unary(Func::arccos)) {
        // Rationalize before the inner rule turns sin(arccos u) into a sqrt.
        return rewrite_power(e.lhs(), e.rhs());
      }
      const Expr l = pass(e.lhs());
      const Expr r = pass(e.rhs());
      if (e.op() == BinOp::pow) return rewrite_power(l, r);
      return make_binary(e.op(), l, r);
    }
    default: return e;
  }
}

}  // namespace

Expr simplify(const Expr& e) {
  Expr current = e;
  for (int i = 0; i < 64; ++i) {
    Expr next = pass(current);
    if (structurally_equal(next, current)) return next;
    current = std::move(next);
  }
  return current;
}

}  // namespace wpb
