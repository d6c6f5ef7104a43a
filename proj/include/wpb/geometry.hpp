#pragma once

// The three base domains and densities on them.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wpb/compiled.hpp"
#include "wpb/expr.hpp"
#include "wpb/quadrature.hpp"

namespace wpb {

enum class DomainKind { square, torus, sphere };

/// A coordinate patch (u, v) over an open box, with the volume density
/// `weight` w.r.t. du dv and the prefactor applied to every integral.
///
///   square  (x, y)          (0,1) x (0,1)     weight 1         prefactor 1
///   torus   (t1, t2)        (0,2pi) x (0,2pi) weight 1         prefactor 1/(4 pi^2)
///   sphere  (theta, phi)    (0,pi) x (0,2pi)  weight sin theta prefactor 1/(4 pi)
class Domain {
 public:
  static Domain square();
  static Domain torus();
  static Domain sphere();

  /// "square" | "torus" | "sphere"; throws InvalidProblem otherwise.
  static Domain from_name(std::string_view name);

  DomainKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept;
  const std::array<std::string, 2>& coords() const noexcept { return coords_; }
  Interval u_range() const noexcept { return u_; }
  Interval v_range() const noexcept { return v_; }
  const Expr& weight() const noexcept { return weight_; }
  double prefactor() const noexcept { return prefactor_; }

  /// Throws InvalidProblem if `e` uses variables other than the coordinates.
  void require_coordinates(const Expr& e, std::string_view what) const;

 private:
  Domain(DomainKind kind, std::array<std::string, 2> coords, Interval u, Interval v, Expr weight,
         double prefactor);

  DomainKind kind_;
  std::array<std::string, 2> coords_;
  Interval u_;
  Interval v_;
  Expr weight_;
  double prefactor_;
};

/// How the density's mass is measured.
enum class WeightConvention {
  volume,      // prefactor * integral of rho * weight du dv
  coordinate,  // prefactor * integral of rho du dv (weight dropped)
};

struct Density {
  Density(Expr e, std::optional<QuadResult> m = std::nullopt, double s = 1.0)
      : expr(std::move(e)), mass(std::move(m)), scale(s) {}

  Expr expr;
  std::optional<QuadResult> mass;  // of `expr`, when known
  double scale = 1.0;              // the constant the original rho was divided by
};

/// prefactor * integral over the domain box of `integrand` du dv, with the
/// first coordinate integrated innermost. Tolerances in `spec` apply to the
/// scaled result. Domain errors are rethrown with the offending point.
QuadResult integrate_on(const Domain& d, const Expr& integrand, const QuadSpec& spec,
                        PolePolicy policy = PolePolicy::raise);

QuadResult density_mass(const Domain& d, const Expr& rho, const QuadSpec& spec,
                        WeightConvention convention = WeightConvention::volume);

/// rho / mass(rho). Throws InvalidProblem when the mass is not finite and
/// positive or its integral does not converge. A rho whose mass is already 1
/// to rounding is returned unchanged.
Density normalize(const Domain& d, const Expr& rho, const QuadSpec& spec,
                  WeightConvention convention = WeightConvention::volume);

struct PositivityReport {
  struct Sample {
    double u;
    double v;
    double value;
  };
  std::size_t samples = 0;
  std::vector<Sample> violations;  // every negative sample
  // Samples that evaluated to exactly 0. Kept apart from the negative ones
  // because a positive density can underflow there, e.g. exp(-1/theta^4)
  // next to a pole of the exponent.
  std::vector<Sample> zeros;
  bool all_positive() const { return violations.empty() && zeros.empty(); }
  bool no_negative() const { return violations.empty(); }
};

/// Samples rho at the centres of an n x n lattice over the domain box.
PositivityReport check_positive(const Domain& d, const Expr& rho, std::size_t n);

}  // namespace wpb
