#pragma once

// Poisson bracket of two linear functionals F_f, F_h at the measure rho dvol:
//
//   {F_f, F_h}(mu_rho) = prefactor * integral (f_u h_v - f_v h_u) tau rho weight du dv
//
// where (u, v) are the domain coordinates and tau the conformal factor.

#include "wpb/expr.hpp"
#include "wpb/geometry.hpp"
#include "wpb/quadrature.hpp"

namespace wpb {

struct BracketProblem {
  Domain domain = Domain::square();
  Expr tau = Expr::constant(1.0);
  Density rho{Expr::constant(1.0)};
  Expr f;
  Expr h;
  bool auto_normalize = true;

  void validate() const;
};

struct BracketReport {
  QuadResult result;
  double normalization_constant = 1.0;  // rho was divided by this before integrating
};

/// simplify((f_u h_v - f_v h_u) * tau * rho * weight), prefactor not included.
Expr build_integrand(const BracketProblem& p);

BracketReport bracket(const BracketProblem& p, const QuadSpec& spec);

}  // namespace wpb
