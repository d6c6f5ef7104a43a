#include "wpb/expr.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "wpb/error.hpp"

namespace wpb {

namespace {

std::string format_argument(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string_view kind_text(DomainError::Kind kind) {
  switch (kind) {
    case DomainError::Kind::argument: return "argument outside domain";
    case DomainError::Kind::pole: return "pole";
    case DomainError::Kind::overflow: return "non-finite result";
  }
  return "domain error";
}

}  // namespace

DomainError::DomainError(Kind kind, const std::string& subexpression, double argument,
                         const std::string& context)
    : Error(std::string(kind_text(kind)) + " in '" + subexpression + "' (argument " +
            format_argument(argument) + ")" + (context.empty() ? "" : " " + context)),
      kind_(kind),
      subexpression_(subexpression),
      argument_(argument) {}

struct Expr::Node {
  Kind kind = Kind::constant;
  double value = 0.0;
  NamedConst named = NamedConst::pi;
  Func func = Func::sin;
  BinOp op = BinOp::add;
  std::string name;
  Expr lhs{nullptr};
  Expr rhs{nullptr};
};

std::string_view func_name(Func f) {
  switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::tan: return "tan";
    case Func::exp: return "exp";
    case Func::ln: return "ln";
    case Func::sqrt: return "sqrt";
    case Func::abs: return "abs";
    case Func::arcsin: return "arcsin";
    case Func::arccos: return "arccos";
    case Func::arctan: return "arctan";
    case Func::erf: return "erf";
    case Func::besseli0: return "besseli0";
    case Func::besseli1: return "besseli1";
    case Func::sgn: return "sgn";
  }
  return "?";
}

std::string_view binop_symbol(BinOp op) {
  switch (op) {
    case BinOp::add: return "+";
    case BinOp::sub: return "-";
    case BinOp::mul: return "*";
    case BinOp::div: return "/";
    case BinOp::pow: return "^";
  }
  return "?";
}

double named_value(NamedConst c) {
  return c == NamedConst::pi ? std::numbers::pi : std::numbers::e;
}

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double value) {
  if (!std::isfinite(value)) throw InvalidProblem("non-finite constant in expression");
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::named(NamedConst c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::named;
  n->named = c;
  n->value = named_value(c);
  return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
  if (name.empty()) throw InvalidProblem("empty variable name");
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::unary(Func f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::unary;
  n->func = f;
  n->lhs = std::move(arg);
  return Expr(std::move(n));
}

Expr Expr::binary(BinOp op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::binary;
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
NamedConst Expr::named_constant() const noexcept { return node_->named; }
const std::string& Expr::name() const noexcept { return node_->name; }
Func Expr::func() const noexcept { return node_->func; }
BinOp Expr::op() const noexcept { return node_->op; }
const Expr& Expr::arg() const noexcept { return node_->lhs; }
const Expr& Expr::lhs() const noexcept { return node_->lhs; }
const Expr& Expr::rhs() const noexcept { return node_->rhs; }

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(BinOp::add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(BinOp::sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(BinOp::mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(BinOp::div, a, b); }
Expr operator-(const Expr& a) { return Expr::binary(BinOp::sub, Expr::constant(0.0), a); }
Expr pow(const Expr& base, const Expr& exponent) {
  return Expr::binary(BinOp::pow, base, exponent);
}
Expr call(Func f, const Expr& arg) { return Expr::unary(f, arg); }

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::constant:
      return a.value() == b.value() && std::signbit(a.value()) == std::signbit(b.value());
    case Expr::Kind::named: return a.named_constant() == b.named_constant();
    case Expr::Kind::variable: return a.name() == b.name();
    case Expr::Kind::unary: return a.func() == b.func() && structurally_equal(a.arg(), b.arg());
    case Expr::Kind::binary:
      return a.op() == b.op() && structurally_equal(a.lhs(), b.lhs()) &&
             structurally_equal(a.rhs(), b.rhs());
  }
  return false;
}

namespace {

int precedence(const Expr& e) {
  if (e.kind() != Expr::Kind::binary) {
    // Negative literals print as "(-c)" and are atoms.
    return 5;
  }
  switch (e.op()) {
    case BinOp::add:
    case BinOp::sub: return 1;
    case BinOp::mul:
    case BinOp::div: return 2;
    case BinOp::pow: return 4;
  }
  return 0;
}

void print_constant(double v, std::string& out) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string_view text(buf, static_cast<std::size_t>(end - buf));
  if (v < 0 || (v == 0 && std::signbit(v))) {
    out += '(';
    out += text;
    out += ')';
  } else {
    out += text;
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::constant: print_constant(e.value(), out); return;
    case Expr::Kind::named: out += e.named_constant() == NamedConst::pi ? "pi" : "e"; return;
    case Expr::Kind::variable: out += e.name(); return;
    case Expr::Kind::unary:
      out += func_name(e.func());
      out += '(';
      print(e.arg(), out);
      out += ')';
      return;
    case Expr::Kind::binary: {
      const int p = precedence(e);
      const bool right_assoc = e.op() == BinOp::pow;
      // Same-precedence operands are parenthesized on the non-associative
      // side so the reparsed tree has the same shape (floating point
      // addition is not associative).
      const bool lparen = precedence(e.lhs()) < p || (right_assoc && precedence(e.lhs()) == p);
      const bool rparen = precedence(e.rhs()) < p || (!right_assoc && precedence(e.rhs()) == p);
      if (lparen) out += '(';
      print(e.lhs(), out);
      if (lparen) out += ')';
      if (e.op() == BinOp::pow) {
        out += '^';
      } else {
        out += ' ';
        out += binop_symbol(e.op());
        out += ' ';
      }
      if (rparen) out += '(';
      print(e.rhs(), out);
      if (rparen) out += ')';
      return;
    }
  }
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Expr::Kind::variable: out.insert(e.name()); return;
    case Expr::Kind::unary: collect_vars(e.arg(), out); return;
    case Expr::Kind::binary:
      collect_vars(e.lhs(), out);
      collect_vars(e.rhs(), out);
      return;
    default: return;
  }
}

}  // namespace

std::string to_text(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

bool depends_on(const Expr& e, std::string_view var) {
  switch (e.kind()) {
    case Expr::Kind::variable: return e.name() == var;
    case Expr::Kind::unary: return depends_on(e.arg(), var);
    case Expr::Kind::binary: return depends_on(e.lhs(), var) || depends_on(e.rhs(), var);
    default: return false;
  }
}

std::size_t tree_size(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::unary: return 1 + tree_size(e.arg());
    case Expr::Kind::binary: return 1 + tree_size(e.lhs()) + tree_size(e.rhs());
    default: return 1;
  }
}

Expr substitute(const Expr& e, std::string_view var, const Expr& replacement) {
  switch (e.kind()) {
    case Expr::Kind::variable: return e.name() == var ? replacement : e;
    case Expr::Kind::unary: {
      Expr a = substitute(e.arg(), var, replacement);
      return a.id() == e.arg().id() ? e : Expr::unary(e.func(), std::move(a));
    }
    case Expr::Kind::binary: {
      Expr l = substitute(e.lhs(), var, replacement);
      Expr r = substitute(e.rhs(), var, replacement);
      if (l.id() == e.lhs().id() && r.id() == e.rhs().id()) return e;
      return Expr::binary(e.op(), std::move(l), std::move(r));
    }
    default: return e;
  }
}

}  // namespace wpb
