#pragma once

// Symplectic area of an (s, t)-parametrized patch of a leaf in the space of
// densities on the sphere, swept by coordinate flows theta -> T(theta, phi, s, t),
// phi -> R(theta, phi, s, t):
//
//   A = (1/4pi) int_{I1} int_{I2} int_0^{2pi} int_0^pi (pullback rho) W dtheta dphi ds dt
//
// with W = sin(theta) (WeightMode::measure) or W = 1 (WeightMode::literal).

#include <string_view>

#include "wpb/expr.hpp"
#include "wpb/geometry.hpp"
#include "wpb/quadrature.hpp"

namespace wpb {

struct FlowMap {
  Expr theta_map = Expr::variable("theta");
  Expr phi_map = Expr::variable("phi");

  static FlowMap identity() { return {}; }
  /// theta fixed, phi -> phi + t.
  static FlowMap rotation();

  void validate() const;
};

enum class WeightMode { measure, literal };

std::string_view weight_mode_name(WeightMode m);
WeightMode weight_mode_from_name(std::string_view name);

struct AreaProblem {
  Density rho{Expr::constant(1.0)};
  FlowMap map;
  Interval s_range;
  Interval t_range;
  WeightMode weight_mode = WeightMode::measure;

  void validate() const;
};

/// simplify(rho with theta, phi replaced simultaneously by the map components).
Expr pullback_density(const Expr& rho, const FlowMap& map);

/// The inner integrand in (theta, phi, s, t), including W but not 1/(4pi).
Expr area_integrand(const AreaProblem& p);

QuadResult area(const AreaProblem& p, const QuadSpec& spec);

/// The inner bracket {F_theta, F_phi} of the pulled-back measure at fixed (s, t).
QuadResult inner_bracket(const AreaProblem& p, double s, double t, const QuadSpec& spec);

}  // namespace wpb
