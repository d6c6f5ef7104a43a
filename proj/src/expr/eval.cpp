#include <cmath>

#include "scalar_ops.hpp"
#include "wpb/error.hpp"
#include "wpb/expr.hpp"

namespace wpb {

namespace {

double checked(const Expr& node, double result, double argument) {
  if (!std::isfinite(result)) {
    throw DomainError(DomainError::Kind::overflow, to_text(node), argument);
  }
  return result;
}

double eval_node(const Expr& e, const Bindings& b) {
  switch (e.kind()) {
    case Expr::Kind::constant:
    case Expr::Kind::named: return e.value();
    case Expr::Kind::variable: {
      auto it = b.find(e.name());
      if (it == b.end()) throw UnboundVariable(e.name());
      return it->second;
    }
    case Expr::Kind::unary: {
      const double x = eval_node(e.arg(), b);
      if (auto v = detail::unary_violation(e.func(), x)) throw DomainError(*v, to_text(e), x);
      return checked(e, detail::apply_unary(e.func(), x), x);
    }
    case Expr::Kind::binary: {
      const double l = eval_node(e.lhs(), b);
      const double r = eval_node(e.rhs(), b);
      if (e.op() == BinOp::div && r == 0.0) {
        throw DomainError(DomainError::Kind::pole, to_text(e), r);
      }
      if (e.op() == BinOp::pow) {
        if (auto v = detail::power_violation(l, r)) throw DomainError(*v, to_text(e), l);
      }
      return checked(e, detail::apply_binary(e.op(), l, r), r);
    }
  }
  return 0.0;
}

}  // namespace

double eval(const Expr& e, const Bindings& bindings) { return eval_node(e, bindings); }

double eval_constant(const Expr& e) { return eval_node(e, Bindings{}); }

}  // namespace wpb
