#include <algorithm>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "random_expr.hpp"
#include "wpb/compiled.hpp"
#include "wpb/error.hpp"
#include "wpb/kernels.hpp"

using namespace wpb;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct KernelScope {
  explicit KernelScope(std::string_view name) : saved(kernels::active().name) {
    kernels::select(name);
  }
  ~KernelScope() { kernels::select(saved); }
  std::string_view saved;
};

}  // namespace

TEST_CASE("scalar table is always available") {
  const auto names = kernels::available();
  CHECK(std::find(names.begin(), names.end(), "scalar") != names.end());
  CHECK_THROWS_AS(kernels::select("no-such-kernel"), std::invalid_argument);
}

TEST_CASE("SIMD kernels match the scalar reference bit for bit") {
  const kernels::KernelTable* simd = kernels::avx2_table();
  if (!simd) {
    MESSAGE("AVX2 kernels unavailable on this machine; skipping");
    return;
  }
  const kernels::KernelTable& ref = kernels::scalar_table();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 24u, 100u, 1023u}) {
    CAPTURE(n);
    std::vector<double> a(n), b(n), pos(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
      pos[i] = std::abs(a[i]);
    }
    const double s = u(rng);
    std::vector<double> r1(n), r2(n);
    auto check_vv = [&](auto fa, auto fb) {
      fa(a.data(), b.data(), r1.data(), n);
      fb(a.data(), b.data(), r2.data(), n);
      CHECK(same_bits(r1, r2));
    };
    check_vv(ref.add, simd->add);
    check_vv(ref.sub, simd->sub);
    check_vv(ref.mul, simd->mul);
    check_vv(ref.div, simd->div);
    auto check_vs = [&](auto fa, auto fb) {
      fa(a.data(), s, r1.data(), n);
      fb(a.data(), s, r2.data(), n);
      CHECK(same_bits(r1, r2));
    };
    check_vs(ref.add_s, simd->add_s);
    check_vs(ref.sub_s, simd->sub_s);
    check_vs(ref.mul_s, simd->mul_s);
    check_vs(ref.div_s, simd->div_s);
    auto check_sv = [&](auto fa, auto fb) {
      fa(s, a.data(), r1.data(), n);
      fb(s, a.data(), r2.data(), n);
      CHECK(same_bits(r1, r2));
    };
    check_sv(ref.rsub_s, simd->rsub_s);
    check_sv(ref.rdiv_s, simd->rdiv_s);
    ref.sqrt(pos.data(), r1.data(), n);
    simd->sqrt(pos.data(), r2.data(), n);
    CHECK(same_bits(r1, r2));
    ref.abs(a.data(), r1.data(), n);
    simd->abs(a.data(), r2.data(), n);
    CHECK(same_bits(r1, r2));
    ref.affine(a.data(), s, 0.5, r1.data(), n);
    simd->affine(a.data(), s, 0.5, r2.data(), n);
    CHECK(same_bits(r1, r2));
    const double d1 = ref.dot(a.data(), b.data(), n);
    const double d2 = simd->dot(a.data(), b.data(), n);
    CHECK(std::memcmp(&d1, &d2, sizeof d1) == 0);
  }
}

TEST_CASE("compiled tape matches tree evaluation bit for bit") {
  testing::SmoothTree gen(123, {"x", "y"});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const std::size_t n = 37;
  for (std::string_view kernel : kernels::available()) {
    KernelScope scope(kernel);
    CAPTURE(kernel);
    for (int i = 0; i < 200; ++i) {
      const Expr e = gen(6);
      const CompiledExpr c(e, {"x", "y"});
      std::vector<double> xs(n), out(n), out_uniform(n);
      for (double& x : xs) x = u(rng);
      const double y = u(rng);
      const std::span<const double> inputs[] = {xs, std::span<const double>(&y, 1)};
      c.eval(inputs, out);
      for (std::size_t k = 0; k < n; ++k) {
        const double want = eval(e, {{"x", xs[k]}, {"y", y}});
        CHECK_MESSAGE(std::memcmp(&want, &out[k], sizeof want) == 0, to_text(e));
        const double vals[] = {xs[k], y};
        const double point = c.eval_point(vals);
        CHECK(std::memcmp(&want, &point, sizeof want) == 0);
      }
      // All-uniform inputs broadcast one value.
      const double x0 = xs[0];
      const std::span<const double> uni[] = {std::span<const double>(&x0, 1),
                                             std::span<const double>(&y, 1)};
      c.eval(uni, out_uniform);
      for (double v : out_uniform) CHECK(std::memcmp(&v, &out[0], sizeof v) == 0);
    }
  }
}

TEST_CASE("compiled tape merges common subexpressions") {
  const Expr s = parse("sin(x)*y");
  const CompiledExpr c(s * s + s, {"x", "y"});
  // x, y, sin, mul, then s*s and +: shared s is computed once.
  CHECK(c.instruction_count() == 6);
}

TEST_CASE("compiled tape pole handling") {
  const CompiledExpr c(parse("1/(x - 1) + 2"), {"x"});
  const double xs[] = {0.0, 1.0, 2.0};
  double out[3];
  const std::span<const double> inputs[] = {xs};
  CHECK_THROWS_AS(c.eval(inputs, out), DomainError);
  c.eval(inputs, out, PolePolicy::zero);
  CHECK(out[0] == 1.0);
  CHECK(out[1] == 0.0);
  CHECK(out[2] == 3.0);
  // Argument violations are never masked.
  const CompiledExpr bad(parse("sqrt(x)"), {"x"});
  const double neg[] = {-1.0};
  const std::span<const double> in2[] = {neg};
  CHECK_THROWS_AS(bad.eval(in2, std::span<double>(out, 1), PolePolicy::zero), DomainError);
  CHECK_THROWS_AS(CompiledExpr(parse("x + z"), {"x"}), UnboundVariable);
}
