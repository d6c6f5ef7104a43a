#pragma once

// Random expression generators shared by the property tests.

#include <random>
#include <string>
#include <vector>

#include "wpb/expr.hpp"

namespace wpb::testing {

/// Arbitrary trees over every node kind, for print/parse checks. Values may
/// be undefined at most points; only structure matters.
class AnyTree {
 public:
  AnyTree(std::uint64_t seed, std::vector<std::string> vars) : rng_(seed), vars_(std::move(vars)) {}

  Expr operator()(int depth) {
    if (depth <= 0 || pick(4) == 0) return leaf();
    if (pick(3) == 0) {
      static constexpr Func fs[] = {Func::sin,    Func::cos,    Func::tan,    Func::exp,
                                    Func::ln,     Func::sqrt,   Func::abs,    Func::arcsin,
                                    Func::arccos, Func::arctan, Func::erf,    Func::besseli0};
      return Expr::unary(fs[pick(std::size(fs))], (*this)(depth - 1));
    }
    static constexpr BinOp ops[] = {BinOp::add, BinOp::sub, BinOp::mul, BinOp::div, BinOp::pow};
    return Expr::binary(ops[pick(5)], (*this)(depth - 1), (*this)(depth - 1));
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  Expr leaf() {
    switch (pick(5)) {
      case 0: return Expr::named(pick(2) ? NamedConst::pi : NamedConst::e);
      case 1: return Expr::constant(std::uniform_real_distribution<double>(-1e3, 1e3)(rng_));
      case 2: return Expr::constant(static_cast<double>(pick(10)));
      default: return Expr::variable(vars_[pick(vars_.size())]);
    }
  }

  std::mt19937_64 rng_;
  std::vector<std::string> vars_;
};

/// Smooth trees, defined and moderate everywhere on a box of size ~[-2, 2]^2:
/// divisions, logs and roots are guarded so the argument stays away from
/// their singularities.
class SmoothTree {
 public:
  SmoothTree(std::uint64_t seed, std::vector<std::string> vars)
      : rng_(seed), vars_(std::move(vars)) {}

  Expr operator()(int depth) {
    if (depth <= 0 || pick(5) == 0) return leaf();
    const Expr a = (*this)(depth - 1);
    switch (pick(14)) {
      case 0: return a + (*this)(depth - 1);
      case 1: return a - (*this)(depth - 1);
      case 2: return a * (*this)(depth - 1);
      case 3: return a / (num(1.5) + call(Func::sin, (*this)(depth - 1)));
      case 4: return pow(a, num(static_cast<double>(2 + pick(2))));
      case 5: return pow(num(2.0) + call(Func::cos, a), call(Func::sin, (*this)(depth - 1)));
      case 6: return call(Func::sin, a);
      case 7: return call(Func::cos, a);
      case 8: return call(Func::exp, call(Func::sin, a));
      case 9: return call(Func::ln, num(1.0) + pow(a, num(2.0)));
      case 10: return call(Func::sqrt, num(1.0) + pow(a, num(2.0)));
      case 11: return call(Func::arctan, a);
      case 12: return call(Func::erf, call(Func::sin, a));
      default: return call(Func::besseli0, call(Func::cos, a));
    }
  }

 private:
  static Expr num(double v) { return Expr::constant(v); }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  Expr leaf() {
    if (pick(3) == 0) return num(std::uniform_real_distribution<double>(-2.0, 2.0)(rng_));
    return Expr::variable(vars_[pick(vars_.size())]);
  }

  std::mt19937_64 rng_;
  std::vector<std::string> vars_;
};

/// Re-expresses a tree in the coordinates of `domain_name` so that it is a
/// smooth function on the manifold: torus angles enter through sin and cos,
/// sphere points through the embedding (sin th cos ph, sin th sin ph, cos th).
/// Square trees are returned unchanged. The tree must use variables a, b.
inline Expr on_domain(const Expr& tree, std::string_view domain_name) {
  const auto v = [](const char* n) { return Expr::variable(n); };
  if (domain_name == "torus") {
    return substitute(substitute(tree, "a", call(Func::sin, v("t1")) + call(Func::cos, v("t2"))),
                      "b", call(Func::cos, v("t1")) * call(Func::sin, v("t2")));
  }
  if (domain_name == "sphere") {
    const Expr st = call(Func::sin, v("theta"));
    return substitute(substitute(tree, "a", st * call(Func::cos, v("phi")) + call(Func::cos, v("theta"))),
                      "b", st * call(Func::sin, v("phi")));
  }
  return substitute(substitute(tree, "a", v("x")), "b", v("y"));
}

}  // namespace wpb::testing
