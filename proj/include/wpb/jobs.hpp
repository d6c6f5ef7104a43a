#pragma once

// Batch jobs and their text config format.
//
// A config is a sequence of sections. `[defaults]` sets keys inherited by
// every later `[job]`; each `[job]` section is one record. Lines are
// `key = value`; `#` starts a comment line. Numeric values may be constant
// expressions such as `pi/4` or `3*(sin(2) - sin(1)^2)`.
//
//   [defaults]
//   abs_tol = 1e-10
//
//   [job]
//   label = unit-jacobian
//   kind = bracket
//   domain = square
//   rho = 1
//   f = x
//   h = y
//   expected = 1
//   tolerance = 1e-8
//
// Keys:
//   kind            bracket | area | mass | normalize              (required)
//   label           free text (default "job<N>")
//   domain          square | torus | sphere  (bracket, mass, normalize; area is sphere)
//   tau, rho, f, h  expressions (tau defaults to 1, rho to 1)
//   theta_map, phi_map, s_lo, s_hi, t_lo, t_hi, weight_mode   (area)
//   convention      volume | coordinate     (mass, normalize)
//   normalize       true | false            (bracket, area; default true)
//   abs_tol, rel_tol, max_subdivisions, max_evals, rule (gk15|gk21), workers
//   expected        value the result is checked against
//   tolerance       allowed deviation (default 1e-8)
//   tolerance_kind  absolute | relative    (default absolute)

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wpb/bracket.hpp"
#include "wpb/error.hpp"
#include "wpb/geometry.hpp"
#include "wpb/leaf_area.hpp"
#include "wpb/quadrature.hpp"

namespace wpb::jobs {

class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& message)
      : Error(source + ":" + std::to_string(line) + ": " + message) {}
};

enum class JobKind { bracket, area, mass, normalize };

std::string_view job_kind_name(JobKind k);

struct Check {
  double expected = 0.0;
  double tolerance = 1e-8;
  bool relative = false;

  bool accepts(double value) const;
};

struct Job {
  std::string label;
  JobKind kind = JobKind::bracket;
  Domain domain = Domain::square();
  Expr tau = Expr::constant(1.0);
  Expr rho = Expr::constant(1.0);
  Expr f;
  Expr h;
  FlowMap map;
  Interval s_range;
  Interval t_range;
  WeightMode weight_mode = WeightMode::measure;
  WeightConvention convention = WeightConvention::volume;
  bool normalize = true;
  QuadSpec spec;
  std::optional<Check> check;
};

/// Reads every record and validates it; nothing is computed. Throws ConfigError.
std::vector<Job> parse_config(std::istream& in, const std::string& source_name);
std::vector<Job> load_config(const std::filesystem::path& path);

struct Outcome {
  nlohmann::ordered_json record;  // one JSON line of the table report
  double value = 0.0;
  bool converged = false;
  bool pass = false;
};

/// Runs one job. Evaluation errors are reported in the record, not thrown.
Outcome run_job(const Job& job);

/// Runs every job (up to `parallel` at once) and writes one JSON line per job
/// in config order. Returns 0 iff every job passes, else 2.
int run_table(const std::vector<Job>& jobs, std::ostream& out, unsigned parallel = 1);

}  // namespace wpb::jobs
