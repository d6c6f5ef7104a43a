#include <cmath>
#include <random>

#include "doctest.h"
#include "wpb/error.hpp"
#include "wpb/leaf_area.hpp"

using namespace wpb;

namespace {

QuadSpec tight(double tol = 1e-10) {
  QuadSpec s;
  s.abs_tol = tol;
  s.rel_tol = tol;
  return s;
}

const Interval mid_band{M_PI / 4, 3 * M_PI / 4};
constexpr const char* gaussian = "exp(-1/4*(sin(theta)/(1 - cos(theta)))^4*sin(2*phi)^2)";

FlowMap example_map() { return FlowMap{parse("arccos(theta + s)"), parse("phi + t")}; }

}  // namespace

TEST_CASE("pullback of simple densities") {
  CHECK(pullback_density(parse("1"), example_map()).is_constant(1.0));
  CHECK(structurally_equal(pullback_density(parse("cos(theta)"), example_map()),
                           parse("theta + s")));
  // Substitution is simultaneous: phi in the theta map is not rewritten again.
  const Expr swapped = pullback_density(parse("theta - phi"), FlowMap{parse("phi"), parse("theta")});
  CHECK(eval(swapped, {{"theta", 1.0}, {"phi", 3.0}}) == 2.0);
}

TEST_CASE("pullback under the identity map is value-equal") {
  const Expr rho = parse(gaussian);
  const Expr back = pullback_density(rho, FlowMap::identity());
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> th(0.01, M_PI - 0.01), ph(0.0, 2 * M_PI);
  for (int i = 0; i < 100; ++i) {
    const Bindings b{{"theta", th(rng)}, {"phi", ph(rng)}};
    const double want = eval(rho, b);
    CHECK(std::abs(eval(back, b) - want) <= 1e-12 * std::abs(want));
  }
}

TEST_CASE("the leaf-area pullback is the rationalized Gaussian") {
  const double c = 0.7082398710278981;
  const Expr back = pullback_density(parse(gaussian) / Expr::constant(c), example_map());
  CHECK(to_text(back).find("arccos") == std::string::npos);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0.0, M_PI), ph(0.0, 2 * M_PI), st(M_PI / 4, 3 * M_PI / 4);
  int compared = 0;
  while (compared < 100) {
    const double theta = th(rng), phi = ph(rng), s = st(rng), t = st(rng);
    const double u = theta + s;
    if (std::abs(u - 1.0) < 1e-3) continue;
    const double q = (1 + u) / (1 - u);
    const double sn = std::sin(2 * (phi + t));
    const double want = std::exp(-0.25 * q * q * sn * sn) / c;
    const double got = eval(back, {{"theta", theta}, {"phi", phi}, {"s", s}, {"t", t}});
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
    ++compared;
  }
}

TEST_CASE("inner bracket for uniform density") {
  AreaProblem p{Density{parse("1")}, FlowMap::rotation(), mid_band, mid_band, WeightMode::measure};
  for (double s : {0.9, 1.5, 2.2}) {
    for (double t : {0.8, 2.0}) {
      CHECK(std::abs(inner_bracket(p, s, t, tight()).value - 1.0) <= 1e-10);
    }
  }
  p.weight_mode = WeightMode::literal;
  CHECK(std::abs(inner_bracket(p, 1.0, 1.0, tight()).value - M_PI / 2) <= 1e-10);
}

TEST_CASE("rotation areas") {
  const AreaProblem p{Density{parse("1")}, FlowMap::rotation(), mid_band, mid_band, WeightMode::measure};
  const auto r = area(p, tight(1e-9));
  CHECK(r.converged);
  CHECK(std::abs(r.value - (M_PI / 2) * (M_PI / 2)) <= 1e-8);

  // A normalized non-uniform density: rotation preserves its mass.
  const Expr rho = parse("(1 + 1/2*cos(theta) + 1/4*sin(theta)*cos(phi))");
  const AreaProblem q{Density{rho}, FlowMap::rotation(), mid_band, {0.5, 1.5}, WeightMode::measure};
  const auto rq = area(q, tight(1e-9));
  CHECK(std::abs(rq.value - (M_PI / 2) * 1.0) <= 1e-6);
}

TEST_CASE("inner bracket is invariant along rotations") {
  const Expr rho = parse("exp(sin(theta)*cos(phi))");
  const AreaProblem p{Density{rho}, FlowMap::rotation(), mid_band, mid_band, WeightMode::measure};
  double lo = INFINITY, hi = -INFINITY;
  for (int k = 0; k < 10; ++k) {
    const double t = M_PI / 4 + k * (M_PI / 2) / 9;
    const double v = inner_bracket(p, 1.2, t, tight(1e-12)).value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi - lo <= 1e-8);
}

TEST_CASE("area is additive in s and linear in rho") {
  const FlowMap map{parse("theta"), parse("phi + s*t")};
  const Expr rho = parse("1 + 1/2*cos(theta)*sin(phi)");
  const QuadSpec spec = tight(1e-9);
  const auto whole = area({Density{rho}, map, {0.5, 1.5}, {0.2, 0.6}}, spec);
  const auto left = area({Density{rho}, map, {0.5, 0.9}, {0.2, 0.6}}, spec);
  const auto right = area({Density{rho}, map, {0.9, 1.5}, {0.2, 0.6}}, spec);
  CHECK(std::abs(left.value + right.value - whole.value) <=
        left.abs_error_estimate + right.abs_error_estimate + whole.abs_error_estimate + 1e-12);
  const auto doubled = area({Density{Expr::constant(2.0) * rho}, map, {0.5, 1.5}, {0.2, 0.6}}, spec);
  CHECK(doubled.value == doctest::Approx(2 * whole.value).epsilon(1e-9));
}

// Reference values from the closed-form phi integral 2 pi e^{-a/2} I0(a/2)
// followed by a 30-digit theta quadrature.
TEST_CASE("leaf-area inner bracket regression at s = t = pi/2") {
  const double c = 0.7082398710278981;
  AreaProblem p{Density{parse(gaussian) / Expr::constant(c)}, example_map(), mid_band, mid_band,
                WeightMode::literal};
  const auto lit = inner_bracket(p, M_PI / 2, M_PI / 2, tight(1e-11));
  CHECK(lit.converged);
  CHECK(lit.value > 0);
  CHECK(lit.value == doctest::Approx(1.3649156435255303).epsilon(1e-9));
  p.weight_mode = WeightMode::measure;
  const auto meas = inner_bracket(p, M_PI / 2, M_PI / 2, tight(1e-11));
  CHECK(meas.value == doctest::Approx(0.89847239789430973).epsilon(1e-9));
}

TEST_CASE("problem validation") {
  AreaProblem p{Density{parse("1")}, FlowMap::rotation(), {2.0, 1.0}, mid_band};
  CHECK_THROWS_AS(p.validate(), InvalidProblem);
  p.s_range = {0.0, 4.0};
  CHECK_THROWS_AS(p.validate(), InvalidProblem);
  p.s_range = mid_band;
  p.map.phi_map = parse("phi + z");
  CHECK_THROWS_AS(p.validate(), InvalidProblem);
  CHECK(weight_mode_from_name("literal") == WeightMode::literal);
  CHECK_THROWS_AS(weight_mode_from_name("sin"), InvalidProblem);
}
