#include "wpb/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wpb/error.hpp"

namespace wpb {

namespace {
constexpr double pi = std::numbers::pi;
}

Domain::Domain(DomainKind kind, std::array<std::string, 2> coords, Interval u, Interval v,
               Expr weight, double prefactor)
    : kind_(kind),
      coords_(std::move(coords)),
      u_(u),
      v_(v),
      weight_(std::move(weight)),
      prefactor_(prefactor) {}

Domain Domain::square() {
  return Domain(DomainKind::square, {"x", "y"}, {0.0, 1.0}, {0.0, 1.0}, Expr::constant(1.0), 1.0);
}

Domain Domain::torus() {
  return Domain(DomainKind::torus, {"t1", "t2"}, {0.0, 2 * pi}, {0.0, 2 * pi},
                Expr::constant(1.0), 1.0 / (4 * pi * pi));
}

Domain Domain::sphere() {
  return Domain(DomainKind::sphere, {"theta", "phi"}, {0.0, pi}, {0.0, 2 * pi},
                call(Func::sin, Expr::variable("theta")), 1.0 / (4 * pi));
}

Domain Domain::from_name(std::string_view name) {
  if (name == "square") return square();
  if (name == "torus") return torus();
  if (name == "sphere") return sphere();
  throw InvalidProblem("unknown domain '" + std::string(name) +
                       "' (expected square, torus or sphere)");
}

std::string_view Domain::name() const noexcept {
  switch (kind_) {
    case DomainKind::square: return "square";
    case DomainKind::torus: return "torus";
    case DomainKind::sphere: return "sphere";
  }
  return "?";
}

void Domain::require_coordinates(const Expr& e, std::string_view what) const {
  for (const auto& v : free_vars(e)) {
    if (v != coords_[0] && v != coords_[1]) {
      throw InvalidProblem(std::string(what) + " uses '" + v + "', which is not a coordinate of the " +
                           std::string(name()) + " (" + coords_[0] + ", " + coords_[1] + ")");
    }
  }
}

QuadResult integrate_on(const Domain& d, const Expr& integrand, const QuadSpec& spec,
                        PolePolicy policy) {
  d.require_coordinates(integrand, "integrand");
  const CompiledExpr code(integrand, {d.coords()[0], d.coords()[1]});
  const double kappa = d.prefactor();

  QuadSpec raw = spec;
  raw.abs_tol = spec.abs_tol / kappa;

  // First coordinate innermost: the outer integration runs over v.
  Integrand2D f = [&](double v, std::span<const double> us, std::span<double> out) {
    const std::array<std::span<const double>, 2> inputs{us, std::span<const double>(&v, 1)};
    try {
      code.eval(inputs, out, policy);
    } catch (const DomainError&) {
      for (double u : us) {
        const std::array<double, 2> point{u, v};
        try {
          (void)code.eval_point(point);
        } catch (const DomainError& e) {
          std::ostringstream at;
          at.precision(17);
          at << "at " << d.coords()[0] << "=" << u << ", " << d.coords()[1] << "=" << v;
          throw DomainError(e.kind(), e.subexpression(), e.argument(), at.str());
        }
      }
      throw;
    }
  };
  QuadResult r = integrate_2d(f, Box2{d.v_range(), d.u_range()}, raw);
  r.value *= kappa;
  r.abs_error_estimate *= kappa;
  return r;
}

QuadResult density_mass(const Domain& d, const Expr& rho, const QuadSpec& spec,
                        WeightConvention convention) {
  d.require_coordinates(rho, "density");
  const Expr integrand =
      convention == WeightConvention::volume ? simplify(rho * d.weight()) : rho;
  return integrate_on(d, integrand, spec);
}

Density normalize(const Domain& d, const Expr& rho, const QuadSpec& spec,
                  WeightConvention convention) {
  const QuadResult mass = density_mass(d, rho, spec, convention);
  if (!std::isfinite(mass.value) || !(mass.value > 0.0)) {
    throw InvalidProblem("density mass is not positive (" + std::to_string(mass.value) + ")");
  }
  if (!mass.converged) {
    throw InvalidProblem("density mass integral did not converge");
  }
  if (std::abs(mass.value - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) {
    return Density{rho, mass, 1.0};
  }
  Density out(rho / Expr::constant(mass.value), std::nullopt, mass.value);
  out.mass = density_mass(d, out.expr, spec, convention);
  return out;
}

PositivityReport check_positive(const Domain& d, const Expr& rho, std::size_t n) {
  if (n < 2) throw InvalidProblem("positivity lattice needs n >= 2");
  d.require_coordinates(rho, "density");
  const CompiledExpr code(rho, {d.coords()[0], d.coords()[1]});
  PositivityReport report;
  const Interval u = d.u_range();
  const Interval v = d.v_range();
  std::vector<double> us(n), values(n);
  for (std::size_t i = 0; i < n; ++i) us[i] = u.lo + (i + 0.5) * u.length() / n;
  for (std::size_t j = 0; j < n; ++j) {
    const double vj = v.lo + (j + 0.5) * v.length() / n;
    const std::array<std::span<const double>, 2> inputs{std::span<const double>(us),
                                                        std::span<const double>(&vj, 1)};
    code.eval(inputs, values);
    for (std::size_t i = 0; i < n; ++i) {
      if (values[i] == 0.0) {
        report.zeros.push_back({us[i], vj, 0.0});
      } else if (!(values[i] > 0.0)) {
        report.violations.push_back({us[i], vj, values[i]});
      }
    }
    report.samples += n;
  }
  return report;
}

}  // namespace wpb
