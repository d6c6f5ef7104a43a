#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "wpb/jobs.hpp"

namespace wpb::jobs {

std::string_view job_kind_name(JobKind k) {
  switch (k) {
    case JobKind::bracket: return "bracket";
    case JobKind::area: return "area";
    case JobKind::mass: return "mass";
    case JobKind::normalize: return "normalize";
  }
  return "?";
}

bool Check::accepts(double value) const {
  if (!std::isfinite(value)) return false;
  const double allowed = relative ? tolerance * std::abs(expected) : tolerance;
  return std::abs(value - expected) <= allowed;
}

namespace {

void put_result(nlohmann::ordered_json& rec, const QuadResult& r) {
  rec["value"] = r.value;
  rec["error_estimate"] = r.abs_error_estimate;
  rec["n_evals"] = r.n_evals;
  rec["converged"] = r.converged;
}

}  // namespace

Outcome run_job(const Job& job) {
  Outcome out;
  auto& rec = out.record;
  rec["label"] = job.label;
  rec["kind"] = job_kind_name(job.kind);

  try {
    QuadResult r;
    switch (job.kind) {
      case JobKind::bracket: {
        BracketProblem p{job.domain, job.tau, Density{job.rho}, job.f, job.h, job.normalize};
        const BracketReport rep = bracket(p, job.spec);
        r = rep.result;
        put_result(rec, r);
        rec["normalization_constant"] = rep.normalization_constant;
        break;
      }
      case JobKind::area: {
        Density rho{job.rho};
        if (job.normalize) rho = normalize(Domain::sphere(), job.rho, job.spec);
        AreaProblem p{rho, job.map, job.s_range, job.t_range, job.weight_mode};
        r = area(p, job.spec);
        put_result(rec, r);
        rec["weight_mode"] = weight_mode_name(job.weight_mode);
        rec["normalization_constant"] = rho.scale;
        break;
      }
      case JobKind::mass: {
        r = density_mass(job.domain, job.rho, job.spec, job.convention);
        put_result(rec, r);
        break;
      }
      case JobKind::normalize: {
        const Density d = normalize(job.domain, job.rho, job.spec, job.convention);
        // Report the original mass; the stored one is that of the normalized rho.
        r = d.mass.value_or(QuadResult{1.0, 0.0, 0, true});
        r.value = d.scale;
        r.abs_error_estimate *= d.scale;
        put_result(rec, r);
        rec["normalized_rho"] = to_text(d.expr);
        break;
      }
    }
    out.value = r.value;
    out.converged = r.converged;
    out.pass = r.converged;
  } catch (const Error& e) {
    rec["error"] = e.what();
    out.pass = false;
  }

  if (job.check) {
    rec["expected"] = job.check->expected;
    rec["tolerance"] = job.check->tolerance;
    rec["tolerance_kind"] = job.check->relative ? "relative" : "absolute";
    out.pass = out.pass && job.check->accepts(out.value);
  }
  rec["pass"] = out.pass;
  return out;
}

int run_table(const std::vector<Job>& jobs, std::ostream& out, unsigned parallel) {
  std::vector<Outcome> outcomes(jobs.size());
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::size_t>(parallel, 1, std::max<std::size_t>(jobs.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) outcomes[i] = run_job(jobs[i]);
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work);
  }
  bool all = true;
  for (const Outcome& o : outcomes) {
    out << o.record.dump() << '\n';
    all = all && o.pass;
  }
  out.flush();
  return all ? 0 : 2;
}

}  // namespace wpb::jobs
