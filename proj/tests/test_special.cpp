#include <cmath>

#include "doctest.h"
#include "wpb/special.hpp"

namespace {

// Series oracles in long double, independent of the library's implementation.
long double i0_oracle(long double x) {
  long double term = 1, sum = 1;
  for (int k = 1; k < 200; ++k) {
    term *= (x / 2) * (x / 2) / (static_cast<long double>(k) * k);
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return sum;
}

long double i1_oracle(long double x) {
  long double term = x / 2, sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= (x / 2) * (x / 2) / (static_cast<long double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("erf against the platform erf") {
  for (int i = -8000; i <= 8000; ++i) {
    const double x = i * 1e-3;
    CAPTURE(x);
    CHECK(std::abs(wpb::special::erf(x) - std::erf(x)) <= 1e-15);
  }
  CHECK(wpb::special::erf(0.0) == 0.0);
  CHECK(wpb::special::erf(30.0) == 1.0);
  CHECK(wpb::special::erf(-30.0) == -1.0);
  CHECK(wpb::special::erf(std::sqrt(2.0) / 2) == doctest::Approx(0.682689492137086).epsilon(1e-13));
}

TEST_CASE("erf is odd and monotone") {
  double prev = -1.0;
  for (int i = -600; i <= 600; ++i) {
    const double x = i * 0.01;
    CHECK(wpb::special::erf(-x) == -wpb::special::erf(x));
    CHECK(wpb::special::erf(x) >= prev);
    prev = wpb::special::erf(x);
  }
}

TEST_CASE("modified Bessel functions against long double series") {
  for (int i = -400; i <= 400; ++i) {
    const double x = i * 0.05;
    CAPTURE(x);
    const long double i0 = i0_oracle(x), i1 = i1_oracle(x);
    CHECK(std::abs(wpb::special::bessel_i0(x) - static_cast<double>(i0)) <= 4e-15 * i0);
    CHECK(std::abs(wpb::special::bessel_i1(x) - static_cast<double>(i1)) <=
          4e-15 * std::abs(i1) + 1e-300);
  }
  CHECK(wpb::special::bessel_i0(1.0) == doctest::Approx(1.2660658777520084).epsilon(1e-15));
  CHECK(wpb::special::bessel_i0(0.0) == 1.0);
  CHECK(wpb::special::bessel_i1(0.0) == 0.0);
}
