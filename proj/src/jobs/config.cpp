#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wpb/jobs.hpp"

namespace wpb::jobs {

namespace {

using Fields = std::map<std::string, std::pair<std::string, std::size_t>>;  // key -> (value, line)

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "kind",      "label",     "domain",    "tau",       "rho",       "f",
      "h",         "theta_map", "phi_map",   "s_lo",      "s_hi",      "t_lo",
      "t_hi",      "weight_mode", "convention", "normalize", "abs_tol", "rel_tol",
      "max_subdivisions", "max_evals", "rule", "workers", "expected", "tolerance",
      "tolerance_kind"};
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class RecordReader {
 public:
  RecordReader(const Fields& fields, const std::string& source, std::size_t section_line)
      : fields_(fields), source_(source), section_line_(section_line) {}

  bool has(const std::string& key) const { return fields_.count(key) != 0; }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    auto it = fields_.find(key);
    throw ConfigError(source_, it == fields_.end() ? section_line_ : it->second.second, message);
  }

  std::string text(const std::string& key, const std::string& fallback = {}) const {
    auto it = fields_.find(key);
    return it == fields_.end() ? fallback : it->second.first;
  }

  std::string required(const std::string& key) const {
    if (!has(key)) throw ConfigError(source_, section_line_, "missing required key '" + key + "'");
    return text(key);
  }

  Expr expr(const std::string& key, const std::string& fallback) const {
    const std::string t = has(key) ? text(key) : fallback;
    try {
      return parse(t);
    } catch (const ParseError& e) {
      fail(key, key + ": " + e.what());
    }
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    try {
      return eval_constant(parse(text(key)));
    } catch (const Error& e) {
      fail(key, key + ": " + e.what());
    }
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key, 0.0);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e18) fail(key, key + " must be a positive integer");
    return static_cast<std::uint64_t>(v);
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = text(key);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail(key, key + " must be true or false");
  }

 private:
  const Fields& fields_;
  const std::string& source_;
  std::size_t section_line_;
};

QuadSpec read_spec(const RecordReader& r) {
  QuadSpec spec;
  spec.abs_tol = r.number("abs_tol", spec.abs_tol);
  spec.rel_tol = r.number("rel_tol", spec.rel_tol);
  spec.max_subdivisions = r.count("max_subdivisions", spec.max_subdivisions);
  spec.max_evals = r.count("max_evals", spec.max_evals);
  spec.workers = static_cast<unsigned>(r.count("workers", spec.workers));
  const std::string rule = r.text("rule", "gk15");
  if (rule == "gk15") {
    spec.rule = GkRule::gk15;
  } else if (rule == "gk21") {
    spec.rule = GkRule::gk21;
  } else {
    r.fail("rule", "rule must be gk15 or gk21");
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    r.fail("abs_tol", e.what());
  }
  return spec;
}

Job build_job(const Fields& fields, const std::string& source, std::size_t line, std::size_t index) {
  const RecordReader r(fields, source, line);
  Job job;
  job.label = r.text("label", "job" + std::to_string(index));

  const std::string kind = r.required("kind");
  if (kind == "bracket") {
    job.kind = JobKind::bracket;
  } else if (kind == "area") {
    job.kind = JobKind::area;
  } else if (kind == "mass") {
    job.kind = JobKind::mass;
  } else if (kind == "normalize") {
    job.kind = JobKind::normalize;
  } else {
    r.fail("kind", "unknown kind '" + kind + "'");
  }

  try {
    job.spec = read_spec(r);
    job.normalize = r.flag("normalize", true);
    job.rho = r.expr("rho", "1");

    if (job.kind == JobKind::area) {
      job.domain = Domain::sphere();
      job.map.theta_map = r.expr("theta_map", "theta");
      job.map.phi_map = r.expr("phi_map", "phi");
      job.s_range = {r.number("s_lo", 0.0), r.number("s_hi", 0.0)};
      job.t_range = {r.number("t_lo", 0.0), r.number("t_hi", 0.0)};
      if (!r.has("s_lo") || !r.has("s_hi") || !r.has("t_lo") || !r.has("t_hi")) {
        throw ConfigError(source, line, "area jobs need s_lo, s_hi, t_lo and t_hi");
      }
      try {
        job.weight_mode = weight_mode_from_name(r.text("weight_mode", "measure"));
      } catch (const InvalidProblem& e) {
        r.fail("weight_mode", e.what());
      }
      AreaProblem{Density{job.rho}, job.map, job.s_range, job.t_range, job.weight_mode}.validate();
    } else {
      try {
        job.domain = Domain::from_name(r.required("domain"));
      } catch (const InvalidProblem& e) {
        r.fail("domain", e.what());
      }
      job.domain.require_coordinates(job.rho, "rho");
      if (job.kind == JobKind::bracket) {
        job.tau = r.expr("tau", "1");
        job.f = r.expr("f", r.required("f"));
        job.h = r.expr("h", r.required("h"));
        BracketProblem{job.domain, job.tau, Density{job.rho}, job.f, job.h}.validate();
      } else {
        const std::string conv = r.text("convention", "volume");
        if (conv == "volume") {
          job.convention = WeightConvention::volume;
        } else if (conv == "coordinate") {
          job.convention = WeightConvention::coordinate;
        } else {
          r.fail("convention", "convention must be volume or coordinate");
        }
      }
    }

    if (r.has("expected")) {
      Check c;
      c.expected = r.number("expected", 0.0);
      c.tolerance = r.number("tolerance", c.tolerance);
      const std::string tk = r.text("tolerance_kind", "absolute");
      if (tk == "relative") {
        c.relative = true;
      } else if (tk != "absolute") {
        r.fail("tolerance_kind", "tolerance_kind must be absolute or relative");
      }
      if (!(c.tolerance >= 0.0)) r.fail("tolerance", "tolerance must be non-negative");
      job.check = c;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(source, line, e.what());
  }
  return job;
}

}  // namespace

std::vector<Job> parse_config(std::istream& in, const std::string& source_name) {
  struct Pending {
    Fields fields;
    std::size_t line;
  };
  Fields defaults;
  std::vector<Pending> records;
  Fields* current = nullptr;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line == "[defaults]") {
        if (!records.empty()) {
          throw ConfigError(source_name, line_no, "[defaults] must precede every [job]");
        }
        current = &defaults;
      } else if (line == "[job]") {
        records.push_back(Pending{defaults, line_no});
        current = &records.back().fields;
      } else {
        throw ConfigError(source_name, line_no, "unknown section " + line);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source_name, line_no, "expected key = value");
    if (!current) throw ConfigError(source_name, line_no, "key outside of a section");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!known_keys().count(key)) throw ConfigError(source_name, line_no, "unknown key '" + key + "'");
    (*current)[key] = {value, line_no};
  }

  std::vector<Job> jobs;
  jobs.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    jobs.push_back(build_job(records[i].fields, source_name, records[i].line, i + 1));
  }
  return jobs;
}

std::vector<Job> load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  return parse_config(in, path.string());
}

}  // namespace wpb::jobs
