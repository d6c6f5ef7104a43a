#include <cmath>
#include <limits>

#include "doctest.h"
#include "wpb/error.hpp"
#include "wpb/geometry.hpp"
#include "wpb/special.hpp"

using namespace wpb;

namespace {

QuadSpec tight(double tol = 1e-12) {
  QuadSpec s;
  s.abs_tol = tol;
  s.rel_tol = tol;
  return s;
}

}  // namespace

TEST_CASE("domains") {
  CHECK(Domain::from_name("square").kind() == DomainKind::square);
  CHECK(Domain::from_name("torus").coords()[0] == "t1");
  CHECK(Domain::from_name("sphere").coords()[1] == "phi");
  CHECK(Domain::sphere().prefactor() == doctest::Approx(1 / (4 * M_PI)));
  CHECK(Domain::torus().prefactor() == doctest::Approx(1 / (4 * M_PI * M_PI)));
  CHECK_THROWS_AS(Domain::from_name("plane"), InvalidProblem);
  CHECK_THROWS_AS(Domain::square().require_coordinates(parse("x*theta"), "rho"), InvalidProblem);
  CHECK_NOTHROW(Domain::square().require_coordinates(parse("x*y*pi"), "rho"));
}

TEST_CASE("masses") {
  const auto sq = density_mass(Domain::square(), parse("3/2*(x^2 + y^2)"), tight(1e-10));
  CHECK(std::abs(sq.value - 1.0) <= 1e-10);
  const auto sph = density_mass(Domain::sphere(), parse("1"), tight());
  CHECK(std::abs(sph.value - 1.0) <= 1e-12);
  const auto sph_coord =
      density_mass(Domain::sphere(), parse("1"), tight(), WeightConvention::coordinate);
  CHECK(sph_coord.value == doctest::Approx(M_PI / 2).epsilon(1e-12));

  const double i0 = special::bessel_i0(1.0);
  const auto tor = density_mass(Domain::torus(), parse("exp(cos(t1) + cos(t2))"), tight(1e-10));
  CHECK(std::abs(tor.value - i0 * i0) <= 1e-8);
}

TEST_CASE("normalize") {
  const Density unchanged = normalize(Domain::square(), parse("1"), tight());
  CHECK(unchanged.scale == 1.0);
  CHECK(structurally_equal(unchanged.expr, parse("1")));

  const double i0 = special::bessel_i0(1.0);
  const Density vm = normalize(Domain::torus(), parse("exp(cos(t1) + cos(t2))"), tight(1e-11));
  CHECK(vm.scale == doctest::Approx(i0 * i0).epsilon(1e-9));
  REQUIRE(vm.mass);
  CHECK(std::abs(vm.mass->value - 1.0) <= 1e-10);

  // A second normalization leaves the density as it is.
  const Density again = normalize(Domain::torus(), vm.expr, tight(1e-11));
  CHECK(std::abs(again.scale - 1.0) <= 1e-10);
  CHECK(std::abs(density_mass(Domain::torus(), again.expr, tight(1e-11)).value - 1.0) <= 1e-10);

  CHECK_THROWS_AS(normalize(Domain::square(), parse("x - 1/2"), tight()), InvalidProblem);
  CHECK_THROWS_AS(normalize(Domain::square(), parse("0 - 1"), tight()), InvalidProblem);
}

TEST_CASE("positivity checks") {
  const auto ok = check_positive(Domain::square(), parse("3/2*(x^2 + y^2)"), 32);
  CHECK(ok.samples == 32 * 32);
  CHECK(ok.all_positive());

  const auto bad = check_positive(Domain::square(), parse("x - 1/2"), 32);
  CHECK(bad.violations.size() == 16 * 32);
  for (const auto& v : bad.violations) CHECK(v.u < 0.5);

  const auto zero_row = check_positive(Domain::square(), parse("x - 1/4"), 2);
  CHECK(zero_row.zeros.size() == 2);
  CHECK(zero_row.no_negative());
  CHECK_FALSE(zero_row.all_positive());

  // The leaf-area Gaussian is positive, but next to theta = 0 its exponent is
  // below the double range and the samples round to 0. Every zero must be
  // such an underflow: log rho = -q^4 sin^2(2 phi) / 4 < log(min subnormal).
  const auto gauss = check_positive(
      Domain::sphere(), parse("exp(-1/4*(sin(theta)/(1 - cos(theta)))^4*sin(2*phi)^2)"), 64);
  CHECK(gauss.no_negative());
  const double log_tiny = std::log(std::numeric_limits<double>::denorm_min());
  for (const auto& z : gauss.zeros) {
    const double q = std::sin(z.u) / (1 - std::cos(z.u));
    const double s2 = std::sin(2 * z.v);
    CHECK(-0.25 * q * q * q * q * s2 * s2 < log_tiny);
  }
  for (const auto& z : gauss.zeros) CHECK(z.u < 0.5);
}

TEST_CASE("domain errors name the offending point") {
  try {
    density_mass(Domain::square(), parse("sqrt(x - 1/2)"), tight());
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("sqrt") != std::string::npos);
    CHECK(msg.find("x=") != std::string::npos);
  }
}
