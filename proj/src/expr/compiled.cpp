#include "wpb/compiled.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <tuple>

#include "scalar_ops.hpp"
#include "wpb/error.hpp"
#include "wpb/kernels.hpp"

namespace wpb {

struct CompiledExpr::Builder {
  using Key = std::tuple<Op, Func, std::uint32_t, std::uint32_t, std::uint64_t>;

  CompiledExpr& self;
  std::map<Key, std::uint32_t> seen;

  std::uint32_t push(Op op, Func f, std::uint32_t a, std::uint32_t b, double c, const Expr& src) {
    const Key key{op, f, a, b, std::bit_cast<std::uint64_t>(c)};
    if (auto it = seen.find(key); it != seen.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(self.tape_.size());
    self.tape_.push_back(Instr{op, f, a, b, c, src});
    seen.emplace(key, id);
    return id;
  }

  std::uint32_t emit(const Expr& e) {
    switch (e.kind()) {
      case Expr::Kind::constant:
      case Expr::Kind::named: return push(Op::constant, Func::sin, 0, 0, e.value(), e);
      case Expr::Kind::variable: {
        const auto& vars = self.variables_;
        auto it = std::find(vars.begin(), vars.end(), e.name());
        if (it == vars.end()) throw UnboundVariable(e.name());
        const auto index = static_cast<std::uint32_t>(it - vars.begin());
        return push(Op::variable, Func::sin, index, 0, 0.0, e);
      }
      case Expr::Kind::unary: {
        const std::uint32_t a = emit(e.arg());
        return push(Op::unary, e.func(), a, 0, 0.0, e);
      }
      case Expr::Kind::binary: {
        const std::uint32_t a = emit(e.lhs());
        const std::uint32_t b = emit(e.rhs());
        Op op = Op::add;
        switch (e.op()) {
          case BinOp::add: op = Op::add; break;
          case BinOp::sub: op = Op::sub; break;
          case BinOp::mul: op = Op::mul; break;
          case BinOp::div: op = Op::div; break;
          case BinOp::pow: op = Op::pow; break;
        }
        return push(op, Func::sin, a, b, 0.0, e);
      }
    }
    return 0;
  }
};

CompiledExpr::CompiledExpr(const Expr& e, std::vector<std::string> variables)
    : source_(e), variables_(std::move(variables)) {
  Builder builder{*this, {}};
  builder.emit(e);
}

namespace {

struct Scratch {
  std::vector<double> values;
  std::vector<const double*> ptr;
  std::vector<std::uint8_t> uniform;
  std::vector<std::uint8_t> dead;
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace

void CompiledExpr::eval(std::span<const std::span<const double>> inputs, std::span<double> out,
                        PolePolicy policy) const {
  const std::size_t n = out.size();
  if (n == 0) return;
  if (inputs.size() != variables_.size()) {
    throw InvalidProblem("compiled expression expects " + std::to_string(variables_.size()) +
                         " inputs");
  }
  for (const auto& in : inputs) {
    if (in.size() != 1 && in.size() != n) {
      throw InvalidProblem("input length must be 1 or the batch size");
    }
  }

  const kernels::KernelTable& k = kernels::active();
  Scratch& s = scratch();
  const std::size_t regs = tape_.size();
  if (s.values.size() < regs * n) s.values.resize(regs * n);
  s.ptr.assign(regs, nullptr);
  s.uniform.assign(regs, 0);
  s.dead.assign(n, 0);
  bool any_dead = false;

  auto fail = [&](DomainError::Kind kind, const Instr& ins, double arg) {
    throw DomainError(kind, to_text(ins.source), arg);
  };

  // A pole either throws or, under PolePolicy::zero, kills the lane.
  auto pole = [&](const Instr& ins, std::size_t lane, double arg) {
    if (policy == PolePolicy::raise) fail(DomainError::Kind::pole, ins, arg);
    s.dead[lane] = 1;
    any_dead = true;
  };

  auto all_dead = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      if (!s.dead[i]) return false;
    }
    return true;
  };

  for (std::size_t r = 0; r < regs; ++r) {
    const Instr& ins = tape_[r];
    double* dst = s.values.data() + r * n;

    if (ins.op == Op::constant) {
      dst[0] = ins.constant;
      s.ptr[r] = dst;
      s.uniform[r] = 1;
      continue;
    }
    if (ins.op == Op::variable) {
      const auto& in = inputs[ins.a];
      s.ptr[r] = in.data();
      s.uniform[r] = in.size() == 1;
      continue;
    }

    s.ptr[r] = dst;
    const double* a = s.ptr[ins.a];
    const bool ua = s.uniform[ins.a];

    if (ins.op == Op::unary) {
      s.uniform[r] = ua;
      const std::size_t m = ua ? 1 : n;
      for (std::size_t i = 0; i < m; ++i) {
        if (!ua && s.dead[i]) continue;
        if (auto v = detail::unary_violation(ins.func, a[i])) {
          if (*v == DomainError::Kind::pole) {
            if (ua) {
              for (std::size_t j = 0; j < n; ++j) pole(ins, j, a[0]);
            } else {
              pole(ins, i, a[i]);
            }
          } else {
            fail(*v, ins, a[i]);
          }
        }
      }
      if (ins.func == Func::sqrt && !ua) {
        k.sqrt(a, dst, n);
      } else if (ins.func == Func::abs && !ua) {
        k.abs(a, dst, n);
      } else {
        for (std::size_t i = 0; i < m; ++i) dst[i] = detail::apply_unary(ins.func, a[i]);
      }
    } else {
      const double* b = s.ptr[ins.b];
      const bool ub = s.uniform[ins.b];
      const bool uniform = ua && ub;
      s.uniform[r] = uniform;

      auto lane_a = [&](std::size_t i) { return ua ? a[0] : a[i]; };
      auto lane_b = [&](std::size_t i) { return ub ? b[0] : b[i]; };
      const std::size_t m = uniform ? 1 : n;

      if (ins.op == Op::div || ins.op == Op::pow) {
        for (std::size_t i = 0; i < m; ++i) {
          if (!uniform && s.dead[i]) continue;
          std::optional<DomainError::Kind> v;
          if (ins.op == Op::div) {
            if (lane_b(i) == 0.0) v = DomainError::Kind::pole;
          } else {
            v = detail::power_violation(lane_a(i), lane_b(i));
          }
          if (!v) continue;
          if (*v != DomainError::Kind::pole) fail(*v, ins, lane_a(i));
          if (uniform) {
            for (std::size_t j = 0; j < n; ++j) pole(ins, j, lane_b(i));
          } else {
            pole(ins, i, lane_b(i));
          }
        }
      }

      if (uniform) {
        dst[0] = detail::apply_binary(static_cast<BinOp>(static_cast<int>(ins.op) - 3), a[0], b[0]);
      } else {
        switch (ins.op) {
          case Op::add:
            if (ua) k.add_s(b, a[0], dst, n);
            else if (ub) k.add_s(a, b[0], dst, n);
            else k.add(a, b, dst, n);
            break;
          case Op::sub:
            if (ua) k.rsub_s(a[0], b, dst, n);
            else if (ub) k.sub_s(a, b[0], dst, n);
            else k.sub(a, b, dst, n);
            break;
          case Op::mul:
            if (ua) k.mul_s(b, a[0], dst, n);
            else if (ub) k.mul_s(a, b[0], dst, n);
            else k.mul(a, b, dst, n);
            break;
          case Op::div:
            if (ua) k.rdiv_s(a[0], b, dst, n);
            else if (ub) k.div_s(a, b[0], dst, n);
            else k.div(a, b, dst, n);
            break;
          case Op::pow:
            if (ub && a != dst && detail::is_small_int_exponent(b[0])) {
              // Same operation sequence as detail::power.
              const double y = b[0];
              if (y == 2.0) {
                k.mul(a, a, dst, n);
              } else if (y == 3.0) {
                k.mul(a, a, dst, n);
                k.mul(dst, a, dst, n);
              } else if (y == 4.0) {
                k.mul(a, a, dst, n);
                k.mul(dst, dst, dst, n);
              } else if (y == 1.0) {
                std::copy(a, a + n, dst);
              } else if (y == 0.0) {
                std::fill(dst, dst + n, 1.0);
              } else if (y == -1.0) {
                k.rdiv_s(1.0, a, dst, n);
              } else {
                k.mul(a, a, dst, n);
                k.rdiv_s(1.0, dst, dst, n);
              }
            } else {
              for (std::size_t i = 0; i < n; ++i) dst[i] = detail::power(lane_a(i), lane_b(i));
            }
            break;
          default: break;
        }
      }
    }

    // Dead lanes carry 0 so later checks and arithmetic stay quiet.
    const std::size_t m = s.uniform[r] ? 1 : n;
    if (any_dead) {
      if (s.uniform[r]) {
        if (all_dead()) {
          std::fill(out.begin(), out.end(), 0.0);
          return;
        }
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          if (s.dead[i]) dst[i] = 0.0;
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (!std::isfinite(dst[i]) && !(m > 1 && s.dead[i])) {
        fail(DomainError::Kind::overflow, ins, dst[i]);
      }
    }
  }

  const std::size_t last = regs - 1;
  const double* res = s.ptr[last];
  if (s.uniform[last]) {
    std::fill(out.begin(), out.end(), res[0]);
  } else {
    std::copy(res, res + n, out.begin());
  }
  if (any_dead) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s.dead[i]) out[i] = 0.0;
    }
  }
}

double CompiledExpr::eval_point(std::span<const double> values) const {
  std::vector<std::span<const double>> inputs;
  inputs.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) inputs.emplace_back(values.data() + i, 1);
  double out = 0.0;
  eval(inputs, std::span<double>(&out, 1));
  return out;
}

}  // namespace wpb
