#pragma once

// Immutable real-valued expression trees.
//
// Expressions are parsed from a small infix language:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | name | name '(' expr ')' | '(' expr ')'
//
// `pi` and `e` are named constants. Unary minus is stored as `0 - x`.
// Functions: sin cos tan exp ln sqrt abs arcsin arccos arctan erf besseli0.
// `besseli1` and `sgn` only appear as results of differentiation and are
// printed by to_text, but the parser rejects them.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace wpb {

enum class Func : std::uint8_t {
  sin,
  cos,
  tan,
  exp,
  ln,
  sqrt,
  abs,
  arcsin,
  arccos,
  arctan,
  erf,
  besseli0,
  besseli1,  // internal
  sgn,       // internal, sgn(0) = 0
};

enum class BinOp : std::uint8_t { add, sub, mul, div, pow };

enum class NamedConst : std::uint8_t { pi, e };

std::string_view func_name(Func f);
std::string_view binop_symbol(BinOp op);
double named_value(NamedConst c);

/// Variable bindings used by tree evaluation. Unbound lookups are errors.
using Bindings = std::map<std::string, double, std::less<>>;

class Expr {
 public:
  enum class Kind : std::uint8_t { constant, named, variable, unary, binary };

  /// The constant 0.
  Expr();

  static Expr constant(double value);
  static Expr named(NamedConst c);
  static Expr variable(std::string name);
  static Expr unary(Func f, Expr arg);
  static Expr binary(BinOp op, Expr lhs, Expr rhs);

  Kind kind() const noexcept;
  bool is_constant() const noexcept { return kind() == Kind::constant; }
  bool is_constant(double v) const noexcept { return is_constant() && value() == v; }
  bool is_variable() const noexcept { return kind() == Kind::variable; }
  bool is_unary(Func f) const noexcept { return kind() == Kind::unary && func() == f; }
  bool is_binary(BinOp o) const noexcept { return kind() == Kind::binary && op() == o; }

  // Accessors are only meaningful for the matching kind.
  double value() const noexcept;
  NamedConst named_constant() const noexcept;
  const std::string& name() const noexcept;
  Func func() const noexcept;
  BinOp op() const noexcept;
  const Expr& arg() const noexcept;
  const Expr& lhs() const noexcept;
  const Expr& rhs() const noexcept;

  /// Identity of the shared node; equal ids imply structural equality.
  const void* id() const noexcept { return node_.get(); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr call(Func f, const Expr& arg);

bool structurally_equal(const Expr& a, const Expr& b);

/// Parses expression text. Throws ParseError.
Expr parse(std::string_view text);

/// Parseable text; parse(to_text(e)) evaluates equal to e.
std::string to_text(const Expr& e);

std::set<std::string> free_vars(const Expr& e);
bool depends_on(const Expr& e, std::string_view var);

/// Evaluates e. Throws UnboundVariable or DomainError; never returns a non-finite value.
double eval(const Expr& e, const Bindings& bindings);

/// Evaluates an expression without free variables.
double eval_constant(const Expr& e);

/// Exact symbolic partial derivative. d/du abs(u) is sgn(u), i.e. 0 at u = 0.
Expr diff(const Expr& e, std::string_view var);

/// Replaces every occurrence of `var` by `replacement`.
Expr substitute(const Expr& e, std::string_view var, const Expr& replacement);

/// Applies a fixed terminating rewrite set (see simplify.cpp); value preserving.
Expr simplify(const Expr& e);

/// Number of nodes in the tree (shared subtrees counted once per occurrence).
std::size_t tree_size(const Expr& e);

}  // namespace wpb
