#pragma once

namespace wpb::special {

/// Gauss error function, absolute error below 1e-15 on the real line.
double erf(double x);

/// Modified Bessel functions of the first kind, orders 0 and 1 (power series).
/// Relative error below 4e-15 for |x| <= 20; it grows slowly with |x| beyond.
double bessel_i0(double x);
double bessel_i1(double x);

}  // namespace wpb::special
