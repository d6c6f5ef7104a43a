// wpb: Poisson brackets of linear functionals and leaf areas from the command line.
//
//   wpb bracket --domain square --rho 1 --f x --h y
//   wpb area --rho 1 --theta-map theta --phi-map "phi + t" --s-lo 0 --s-hi 1 --t-lo 0 --t-hi 1
//   wpb table configs/table1.cfg --jobs 4
//
// Results go to stdout as JSON; diagnostics go to stderr. Exit status is 0 when
// the computation converged (for `table`: every job passed), 2 when it did not,
// and 1 on invalid input.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpb/bracket.hpp"
#include "wpb/error.hpp"
#include "wpb/geometry.hpp"
#include "wpb/jobs.hpp"
#include "wpb/leaf_area.hpp"

#ifndef WPB_VERSION
#define WPB_VERSION "dev"
#endif

namespace {

using nlohmann::ordered_json;

struct SpecFlags {
  wpb::QuadSpec spec;
  std::string rule = "gk15";

  void attach(CLI::App& app) {
    app.add_option("--abs-tol", spec.abs_tol, "absolute tolerance")->capture_default_str();
    app.add_option("--rel-tol", spec.rel_tol, "relative tolerance")->capture_default_str();
    app.add_option("--max-subdivisions", spec.max_subdivisions, "per 1D integral")
        ->capture_default_str();
    app.add_option("--max-evals", spec.max_evals, "integrand evaluation budget")
        ->capture_default_str();
    app.add_option("--workers", spec.workers, "threads for the outermost level")
        ->capture_default_str();
    app.add_option("--rule", rule, "Gauss-Kronrod pair")
        ->check(CLI::IsMember({"gk15", "gk21"}))
        ->capture_default_str();
  }

  wpb::QuadSpec resolved() const {
    wpb::QuadSpec s = spec;
    s.rule = rule == "gk21" ? wpb::GkRule::gk21 : wpb::GkRule::gk15;
    s.validate();
    return s;
  }
};

int emit(const ordered_json& doc, bool converged) {
  std::cout << doc.dump() << '\n';
  if (!converged) std::cerr << "warning: integration did not reach the requested tolerance\n";
  return converged ? 0 : 2;
}

void put_result(ordered_json& doc, const char* value_key, const wpb::QuadResult& r) {
  doc[value_key] = r.value;
  doc["error_estimate"] = r.abs_error_estimate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson brackets of linear functionals on densities, and symplectic leaf areas"};
  app.set_version_flag("--version", std::string("wpb ") + WPB_VERSION);
  app.require_subcommand(1);

  // bracket
  auto* bracket_cmd = app.add_subcommand("bracket", "bracket {F_f, F_h} at the measure rho");
  bracket_cmd->set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  std::string b_domain, b_tau = "1", b_rho = "1", b_f, b_h;
  bool b_no_normalize = false;
  SpecFlags b_spec;
  bracket_cmd->add_option("--domain", b_domain, "square | torus | sphere")->required();
  bracket_cmd->add_option("--tau", b_tau, "conformal factor")->capture_default_str();
  bracket_cmd->add_option("--rho", b_rho, "density")->capture_default_str();
  bracket_cmd->add_option("--f", b_f, "first functional's integrand")->required();
  bracket_cmd->add_option("--h", b_h, "second functional's integrand")->required();
  bracket_cmd->add_flag("--no-normalize", b_no_normalize, "use rho as given");
  b_spec.attach(*bracket_cmd);

  // area
  auto* area_cmd = app.add_subcommand("area", "symplectic area of a leaf patch on the sphere");
  std::string a_rho = "1", a_theta = "theta", a_phi = "phi", a_mode = "measure";
  double s_lo = 0, s_hi = 0, t_lo = 0, t_hi = 0;
  bool a_no_normalize = false;
  SpecFlags a_spec;
  area_cmd->add_option("--rho", a_rho, "density on the sphere")->capture_default_str();
  area_cmd->add_option("--theta-map", a_theta, "theta component of the flow, in theta, phi, s, t")
      ->capture_default_str();
  area_cmd->add_option("--phi-map", a_phi, "phi component of the flow, in theta, phi, s, t")
      ->capture_default_str();
  area_cmd->add_option("--s-lo", s_lo)->required();
  area_cmd->add_option("--s-hi", s_hi)->required();
  area_cmd->add_option("--t-lo", t_lo)->required();
  area_cmd->add_option("--t-hi", t_hi)->required();
  area_cmd->add_option("--weight-mode", a_mode, "measure (sin theta) | literal (1)")
      ->check(CLI::IsMember({"measure", "literal"}))
      ->capture_default_str();
  area_cmd->add_flag("--no-normalize", a_no_normalize, "use rho as given");
  a_spec.attach(*area_cmd);

  // mass / normalize
  auto* mass_cmd = app.add_subcommand("mass", "total mass of a density");
  auto* norm_cmd = app.add_subcommand("normalize", "normalization constant of a density");
  std::string m_domain, m_rho, m_convention = "volume";
  SpecFlags m_spec;
  for (CLI::App* cmd : {mass_cmd, norm_cmd}) {
    cmd->add_option("--domain", m_domain, "square | torus | sphere")->required();
    cmd->add_option("--rho", m_rho, "density")->required();
    cmd->add_option("--convention", m_convention, "volume | coordinate")
        ->check(CLI::IsMember({"volume", "coordinate"}))
        ->capture_default_str();
    m_spec.attach(*cmd);
  }

  // table
  auto* table_cmd = app.add_subcommand("table", "run every job of a config file");
  std::string config_path;
  unsigned parallel = 1;
  table_cmd->add_option("config", config_path, "config file")->required();
  table_cmd->add_option("--jobs", parallel, "jobs run at once")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*bracket_cmd) {
      wpb::BracketProblem p;
      p.domain = wpb::Domain::from_name(b_domain);
      p.tau = wpb::parse(b_tau);
      p.rho = wpb::Density{wpb::parse(b_rho)};
      p.f = wpb::parse(b_f);
      p.h = wpb::parse(b_h);
      p.auto_normalize = !b_no_normalize;
      const wpb::BracketReport rep = wpb::bracket(p, b_spec.resolved());
      ordered_json doc;
      put_result(doc, "value", rep.result);
      doc["n_evals"] = rep.result.n_evals;
      doc["converged"] = rep.result.converged;
      doc["normalization_constant"] = rep.normalization_constant;
      return emit(doc, rep.result.converged);
    }
    if (*area_cmd) {
      const wpb::QuadSpec spec = a_spec.resolved();
      wpb::AreaProblem p;
      p.rho = wpb::Density{wpb::parse(a_rho)};
      p.map = wpb::FlowMap{wpb::parse(a_theta), wpb::parse(a_phi)};
      p.s_range = {s_lo, s_hi};
      p.t_range = {t_lo, t_hi};
      p.weight_mode = wpb::weight_mode_from_name(a_mode);
      p.validate();
      if (!a_no_normalize) p.rho = wpb::normalize(wpb::Domain::sphere(), p.rho.expr, spec);
      const wpb::QuadResult r = wpb::area(p, spec);
      ordered_json doc;
      put_result(doc, "area", r);
      doc["weight_mode"] = a_mode;
      doc["n_evals"] = r.n_evals;
      doc["converged"] = r.converged;
      doc["normalization_constant"] = p.rho.scale;
      return emit(doc, r.converged);
    }
    if (*mass_cmd || *norm_cmd) {
      const wpb::Domain d = wpb::Domain::from_name(m_domain);
      const wpb::Expr rho = wpb::parse(m_rho);
      d.require_coordinates(rho, "rho");
      const auto conv = m_convention == "coordinate" ? wpb::WeightConvention::coordinate
                                                     : wpb::WeightConvention::volume;
      const wpb::QuadSpec spec = m_spec.resolved();
      ordered_json doc;
      if (*mass_cmd) {
        const wpb::QuadResult r = wpb::density_mass(d, rho, spec, conv);
        put_result(doc, "mass", r);
        doc["n_evals"] = r.n_evals;
        doc["converged"] = r.converged;
        return emit(doc, r.converged);
      }
      const wpb::Density n = wpb::normalize(d, rho, spec, conv);
      doc["normalization_constant"] = n.scale;
      doc["normalized_rho"] = wpb::to_text(n.expr);
      doc["normalized_mass"] = n.mass ? n.mass->value : 1.0;
      return emit(doc, true);
    }
    if (*table_cmd) {
      const auto jobs = wpb::jobs::load_config(config_path);
      return wpb::jobs::run_table(jobs, std::cout, parallel);
    }
  } catch (const wpb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
