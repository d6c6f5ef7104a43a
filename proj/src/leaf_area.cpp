#include "wpb/leaf_area.hpp"

#include <array>
#include <numbers>
#include <sstream>

#include "wpb/compiled.hpp"
#include "wpb/error.hpp"

namespace wpb {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kappa = 1.0 / (4.0 * pi);

// Integration order: theta innermost, then phi, t, s.
const std::vector<std::string>& area_variables() {
  static const std::vector<std::string> vars{"theta", "phi", "s", "t"};
  return vars;
}

void require_vars(const Expr& e, std::string_view what) {
  for (const auto& v : free_vars(e)) {
    if (v != "theta" && v != "phi" && v != "s" && v != "t") {
      throw InvalidProblem(std::string(what) + " uses '" + v +
                           "'; only theta, phi, s, t are allowed");
    }
  }
}

std::string where(double theta, double phi, double s, double t) {
  std::ostringstream at;
  at.precision(17);
  at << "at theta=" << theta << ", phi=" << phi << ", s=" << s << ", t=" << t;
  return at.str();
}

// Pole lanes (the removable singular set of rationalized pullbacks) count as 0.
void eval_area_batch(const CompiledExpr& code, double s, double t, double phi,
                     std::span<const double> thetas, std::span<double> out) {
  const std::array<std::span<const double>, 4> inputs{
      thetas, std::span<const double>(&phi, 1), std::span<const double>(&s, 1),
      std::span<const double>(&t, 1)};
  try {
    code.eval(inputs, out, PolePolicy::zero);
  } catch (const DomainError&) {
    for (double theta : thetas) {
      const std::array<double, 4> point{theta, phi, s, t};
      try {
        (void)code.eval_point(point);
      } catch (const DomainError& e) {
        if (e.kind() == DomainError::Kind::pole) continue;
        throw DomainError(e.kind(), e.subexpression(), e.argument(), where(theta, phi, s, t));
      }
    }
    throw;
  }
}

}  // namespace

FlowMap FlowMap::rotation() {
  return FlowMap{Expr::variable("theta"), Expr::variable("phi") + Expr::variable("t")};
}

void FlowMap::validate() const {
  require_vars(theta_map, "theta map");
  require_vars(phi_map, "phi map");
}

std::string_view weight_mode_name(WeightMode m) {
  return m == WeightMode::measure ? "measure" : "literal";
}

WeightMode weight_mode_from_name(std::string_view name) {
  if (name == "measure") return WeightMode::measure;
  if (name == "literal") return WeightMode::literal;
  throw InvalidProblem("unknown weight mode '" + std::string(name) +
                       "' (expected measure or literal)");
}

void AreaProblem::validate() const {
  Domain::sphere().require_coordinates(rho.expr, "rho");
  map.validate();
  if (!(s_range.lo < s_range.hi) || !(t_range.lo < t_range.hi)) {
    throw InvalidProblem("parameter intervals must satisfy lo < hi");
  }
  if (s_range.lo < 0.0 || s_range.hi > pi) {
    throw InvalidProblem("s interval must lie in [0, pi]");
  }
  if (t_range.lo < 0.0 || t_range.hi > 2 * pi) {
    throw InvalidProblem("t interval must lie in [0, 2pi]");
  }
}

Expr pullback_density(const Expr& rho, const FlowMap& map) {
  // Substitute through placeholders so theta_map may refer to phi and vice versa.
  const Expr theta_tmp = Expr::variable("theta__src");
  const Expr phi_tmp = Expr::variable("phi__src");
  Expr e = substitute(rho, "theta", theta_tmp);
  e = substitute(e, "phi", phi_tmp);
  e = substitute(e, "theta__src", map.theta_map);
  e = substitute(e, "phi__src", map.phi_map);
  return simplify(e);
}

Expr area_integrand(const AreaProblem& p) {
  const Expr pulled = pullback_density(p.rho.expr, p.map);
  if (p.weight_mode == WeightMode::literal) return pulled;
  return simplify(pulled * call(Func::sin, Expr::variable("theta")));
}

QuadResult area(const AreaProblem& p, const QuadSpec& spec) {
  p.validate();
  const CompiledExpr code(area_integrand(p), area_variables());
  QuadSpec raw = spec;
  raw.abs_tol = spec.abs_tol / kappa;
  Integrand4D f = [&](double s, double t, double phi, std::span<const double> thetas,
                      std::span<double> out) { eval_area_batch(code, s, t, phi, thetas, out); };
  QuadResult r = integrate_4d(f, Box2{p.s_range, p.t_range}, Box2{{0.0, 2 * pi}, {0.0, pi}}, raw);
  r.value *= kappa;
  r.abs_error_estimate *= kappa;
  return r;
}

QuadResult inner_bracket(const AreaProblem& p, double s, double t, const QuadSpec& spec) {
  p.validate();
  const CompiledExpr code(area_integrand(p), area_variables());
  QuadSpec raw = spec;
  raw.abs_tol = spec.abs_tol / kappa;
  Integrand2D f = [&](double phi, std::span<const double> thetas, std::span<double> out) {
    eval_area_batch(code, s, t, phi, thetas, out);
  };
  QuadResult r = integrate_2d(f, Box2{{0.0, 2 * pi}, {0.0, pi}}, raw);
  r.value *= kappa;
  r.abs_error_estimate *= kappa;
  return r;
}

}  // namespace wpb
