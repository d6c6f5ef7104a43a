#include <numbers>

#include "build.hpp"
#include "wpb/expr.hpp"

namespace wpb {

using namespace detail;

namespace {

// Derivative of f(u) with respect to u, as an expression in u.
Expr outer_derivative(Func f, const Expr& u) {
  switch (f) {
    case Func::sin: return make_unary(Func::cos, u);
    case Func::cos: return neg(make_unary(Func::sin, u));
    case Func::tan: return div(num(1.0), pw(make_unary(Func::cos, u), num(2.0)));
    case Func::exp: return make_unary(Func::exp, u);
    case Func::ln: return div(num(1.0), u);
    case Func::sqrt: return div(num(1.0), mul(num(2.0), make_unary(Func::sqrt, u)));
    case Func::abs: return make_unary(Func::sgn, u);
    case Func::arcsin:
      return div(num(1.0), make_unary(Func::sqrt, sub(num(1.0), pw(u, num(2.0)))));
    case Func::arccos:
      return neg(div(num(1.0), make_unary(Func::sqrt, sub(num(1.0), pw(u, num(2.0))))));
    case Func::arctan: return div(num(1.0), add(num(1.0), pw(u, num(2.0))));
    case Func::erf:
      return mul(num(2.0 / std::sqrt(std::numbers::pi)),
                 make_unary(Func::exp, neg(pw(u, num(2.0)))));
    case Func::besseli0: return make_unary(Func::besseli1, u);
    // I1'(u) = I0(u) - I1(u)/u; the removable singularity at u = 0 is a pole here.
    case Func::besseli1:
      return sub(make_unary(Func::besseli0, u), div(make_unary(Func::besseli1, u), u));
    case Func::sgn: return num(0.0);
  }
  return num(0.0);
}

}  // namespace

Expr diff(const Expr& e, std::string_view var) {
  switch (e.kind()) {
    case Expr::Kind::constant:
    case Expr::Kind::named: return num(0.0);
    case Expr::Kind::variable: return num(e.name() == var ? 1.0 : 0.0);
    case Expr::Kind::unary: {
      const Expr du = diff(e.arg(), var);
      if (du.is_constant(0.0)) return num(0.0);
      return mul(outer_derivative(e.func(), e.arg()), du);
    }
    case Expr::Kind::binary: {
      const Expr& a = e.lhs();
      const Expr& b = e.rhs();
      const Expr da = diff(a, var);
      const Expr db = diff(b, var);
      switch (e.op()) {
        case BinOp::add: return add(da, db);
        case BinOp::sub: return sub(da, db);
        case BinOp::mul: return add(mul(da, b), mul(a, db));
        case BinOp::div:
          if (db.is_constant(0.0)) return div(da, b);
          return div(sub(mul(da, b), mul(a, db)), pw(b, num(2.0)));
        case BinOp::pow:
          if (db.is_constant(0.0)) {
            // b^... with constant exponent: b * a^(b-1) * a'
            if (da.is_constant(0.0)) return num(0.0);
            return mul(mul(b, pw(a, sub(b, num(1.0)))), da);
          }
          if (da.is_constant(0.0)) {
            return mul(mul(e, make_unary(Func::ln, a)), db);
          }
          return mul(e, add(mul(db, make_unary(Func::ln, a)), div(mul(b, da), a)));
      }
    }
  }
  return num(0.0);
}

}  // namespace wpb
