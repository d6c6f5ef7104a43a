#include "wpb/bracket.hpp"

#include <cmath>

namespace wpb {

void BracketProblem::validate() const {
  domain.require_coordinates(tau, "tau");
  domain.require_coordinates(rho.expr, "rho");
  domain.require_coordinates(f, "f");
  domain.require_coordinates(h, "h");
}

Expr build_integrand(const BracketProblem& p) {
  const auto& [u, v] = p.domain.coords();
  const Expr jacobian = diff(p.f, u) * diff(p.h, v) - diff(p.f, v) * diff(p.h, u);
  return simplify(jacobian * p.tau * p.rho.expr * p.domain.weight());
}

BracketReport bracket(const BracketProblem& p, const QuadSpec& spec) {
  p.validate();
  BracketReport report;
  BracketProblem problem = p;
  const bool already_normalized =
      p.rho.mass && std::abs(p.rho.mass->value - 1.0) <= 1e-8 && p.rho.mass->converged;
  if (p.auto_normalize && !already_normalized) {
    problem.rho = normalize(p.domain, p.rho.expr, spec);
    report.normalization_constant = problem.rho.scale;
  } else if (already_normalized) {
    report.normalization_constant = p.rho.scale;
  }
  report.result = integrate_on(problem.domain, build_integrand(problem), spec);
  return report;
}

}  // namespace wpb
