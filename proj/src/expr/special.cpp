#include "wpb/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace wpb::special {

namespace {

// erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n 2^n x^(2n+1) / (1*3*...*(2n+1)).
// Every term is positive, so there is no cancellation for moderate x.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 400; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x2) * sum;
}

// erfc(x) for x > 0 by the continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz method.
double erfc_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 500; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    c = x + a / c;
    if (std::abs(d) < tiny) d = tiny;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * f);
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double r;
  if (ax < 2.5) {
    r = erf_series(ax);
  } else if (ax < 6.5) {
    r = 1.0 - erfc_fraction(ax);
  } else {
    r = 1.0;
  }
  return x < 0 ? -r : r;
}

double bessel_i0(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 2000; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

double bessel_i1(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 2000; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return 0.5 * x * sum;
}

}  // namespace wpb::special
