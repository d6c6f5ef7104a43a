#pragma once

// Batch evaluation of an Expr over many points at once.
//
// The tree is flattened into a register tape with common subexpressions
// merged. Each input variable is either an array of n values or a single
// value shared by all n lanes ("uniform"); operations whose operands are all
// uniform are computed once. Arithmetic runs through the active SIMD kernel
// table and transcendental functions through the same scalar routines as
// eval(), so results are bit-identical to tree evaluation.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wpb/expr.hpp"

namespace wpb {

enum class PolePolicy {
  raise,  // division by zero throws DomainError
  zero,   // lanes that hit a pole evaluate to 0
};

class CompiledExpr {
 public:
  CompiledExpr(const Expr& e, std::vector<std::string> variables);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t instruction_count() const noexcept { return tape_.size(); }
  const Expr& source() const noexcept { return source_; }

  /// inputs[k] supplies variables()[k]: size 1 (uniform) or out.size().
  void eval(std::span<const std::span<const double>> inputs, std::span<double> out,
            PolePolicy policy = PolePolicy::raise) const;

  /// One point; values[k] binds variables()[k].
  double eval_point(std::span<const double> values) const;

 private:
  enum class Op : std::uint8_t { constant, variable, unary, add, sub, mul, div, pow };

  struct Instr {
    Op op;
    Func func;
    std::uint32_t a;
    std::uint32_t b;
    double constant;
    Expr source;
  };

  struct Builder;
  friend struct Builder;

  Expr source_;
  std::vector<std::string> variables_;
  std::vector<Instr> tape_;
};

}  // namespace wpb
