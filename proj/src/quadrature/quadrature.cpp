#include "wpb/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <queue>
#include <thread>
#include <vector>

#include "wpb/error.hpp"
#include "wpb/kernels.hpp"

namespace wpb {

void QuadSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidProblem("tolerances must be positive");
  if (max_subdivisions < 1) throw InvalidProblem("max_subdivisions must be at least 1");
  if (max_evals < 1) throw InvalidProblem("max_evals must be at least 1");
  if (workers < 1) throw InvalidProblem("workers must be at least 1");
}

double tolerance_for(const QuadSpec& spec, double value) {
  return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

namespace quad_detail {

double compensated_sum(std::span<const double> terms) {
  // Neumaier's variant of Kahan summation.
  double sum = 0.0;
  double c = 0.0;
  for (double t : terms) {
    const double s = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      c += (sum - s) + t;
    } else {
      c += (t - s) + sum;
    }
    sum = s;
  }
  return sum + c;
}

namespace {

constexpr std::size_t max_padded = 24;

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  double inner;
};

bool splittable(double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  if (!(mid > lo && mid < hi)) return false;
  const double scale = std::max(std::abs(lo), std::abs(hi));
  return hi - lo > 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

struct RuleEvaluator {
  const GkTable& rule;
  const NodeFn& fn;
  bool has_inner;
  Budget& budget;
  std::uint64_t evals = 0;
  bool inner_converged = true;

  Segment operator()(double lo, double hi) {
    const kernels::KernelTable& k = kernels::active();
    const std::size_t padded = rule.nodes.size();
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<double, max_padded> x{};
    std::array<double, max_padded> values{};
    std::array<double, max_padded> errors{};
    k.affine(rule.nodes.data(), half, centre, x.data(), padded);

    const NodeStats stats = fn(std::span<const double>(x.data(), rule.size),
                               std::span<double>(values.data(), rule.size),
                               std::span<double>(errors.data(), rule.size));
    evals += stats.evals;
    inner_converged = inner_converged && stats.converged;
    if (!has_inner) budget.charge(stats.evals);
    for (std::size_t i = rule.size; i < padded; ++i) values[i] = 0.0;

    const double kronrod = half * k.dot(values.data(), rule.kronrod_weights.data(), padded);
    const double gauss = half * k.dot(values.data(), rule.gauss_weights.data(), padded);
    double inner = 0.0;
    if (has_inner) inner = half * k.dot(errors.data(), rule.kronrod_weights.data(), padded);
    return Segment{lo, hi, kronrod, std::abs(kronrod - gauss), std::abs(inner)};
  }
};

struct Totals {
  double value = 0.0;
  double error = 0.0;
  double inner = 0.0;
};

Totals exact_totals(std::vector<Segment> segs) {
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  std::vector<double> v(segs.size()), e(segs.size()), in(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    v[i] = segs[i].value;
    e[i] = segs[i].error;
    in[i] = segs[i].inner;
  }
  return Totals{compensated_sum(v), compensated_sum(e), compensated_sum(in)};
}

}  // namespace

QuadResult adaptive(const NodeFn& fn, Interval range, const QuadSpec& spec, Budget& budget,
                    bool has_inner, double* inner_error) {
  if (!(range.lo < range.hi)) throw InvalidProblem("integration interval must satisfy lo < hi");
  RuleEvaluator rule{table(spec.rule), fn, has_inner, budget};

  std::vector<Segment> segs;
  segs.reserve(16);
  segs.push_back(rule(range.lo, range.hi));

  // Worst error first; ties go to the leftmost segment.
  using Entry = std::pair<double, double>;  // (error, -lo)
  auto by_priority = [&](std::size_t a, std::size_t b) {
    const Entry ea{segs[a].error, -segs[a].lo};
    const Entry eb{segs[b].error, -segs[b].lo};
    return ea < eb;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_priority)> heap(
      by_priority);
  if (splittable(range.lo, range.hi)) heap.push(0);

  Totals run{segs[0].value, segs[0].error, segs[0].inner};
  bool converged = false;

  for (;;) {
    const double tol = tolerance_for(spec, run.value);
    if (run.error + run.inner <= tol || (has_inner && run.error <= 0.01 * tol)) {
      const Totals exact = exact_totals(segs);
      const double exact_tol = tolerance_for(spec, exact.value);
      if (exact.error + exact.inner <= exact_tol) {
        converged = true;
        break;
      }
      // Inner error alone exceeds the target; refining this level cannot help.
      if (has_inner && exact.error <= 0.01 * exact_tol) break;
    }
    if (heap.empty() || segs.size() >= spec.max_subdivisions || budget.exhausted()) break;

    const std::size_t worst = heap.top();
    heap.pop();
    const Segment parent = segs[worst];
    const double mid = 0.5 * (parent.lo + parent.hi);
    const Segment left = rule(parent.lo, mid);
    const Segment right = rule(mid, parent.hi);

    run.value += (left.value + right.value) - parent.value;
    run.error += (left.error + right.error) - parent.error;
    run.inner += (left.inner + right.inner) - parent.inner;
    run.error = std::max(run.error, 0.0);
    run.inner = std::max(run.inner, 0.0);

    segs[worst] = left;
    segs.push_back(right);
    if (splittable(left.lo, left.hi)) heap.push(worst);
    if (splittable(right.lo, right.hi)) heap.push(segs.size() - 1);
  }

  const Totals exact = exact_totals(segs);
  if (inner_error) *inner_error = exact.inner;
  QuadResult r;
  r.value = exact.value;
  r.abs_error_estimate = exact.error + exact.inner;
  r.n_evals = rule.evals;
  r.converged = converged && rule.inner_converged &&
                r.abs_error_estimate <= tolerance_for(spec, r.value);
  return r;
}

}  // namespace quad_detail

namespace {

using quad_detail::Budget;
using quad_detail::NodeFn;
using quad_detail::NodeStats;

// Values (and nested error estimates) of the integrand along the inner axis
// of a 2D level, at fixed outer coordinate u.
using InnerLine = std::function<NodeStats(double u, std::span<const double> v,
                                          std::span<double> values, std::span<double> errors)>;

// Runs body(i) for i in [0, n), split over `workers` threads. Each index
// writes only its own slot, so the outcome does not depend on scheduling.
template <class Body>
void for_each_node(std::size_t n, unsigned workers, Body&& body) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += threads) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

QuadSpec tightened(const QuadSpec& spec, double factor, double measure) {
  QuadSpec s = spec;
  s.abs_tol = spec.abs_tol / (factor * measure);
  s.rel_tol = spec.rel_tol / factor;
  s.workers = 1;
  return s;
}

QuadResult run_2d(const InnerLine& line, bool line_has_inner, Box2 box, const QuadSpec& spec,
                  Budget& budget, unsigned workers, double extra = 1.0,
                  double* inner_error = nullptr) {
  const QuadSpec inner = tightened(spec, 10.0 * extra, box.u.length());
  NodeFn outer = [&](std::span<const double> us, std::span<double> values,
                     std::span<double> errors) {
    std::vector<QuadResult> results(us.size());
    for_each_node(us.size(), workers, [&](std::size_t i) {
      const double u = us[i];
      NodeFn leaf = [&](std::span<const double> v, std::span<double> vals,
                        std::span<double> errs) { return line(u, v, vals, errs); };
      results[i] = quad_detail::adaptive(leaf, box.v, inner, budget, line_has_inner);
    });
    NodeStats stats;
    for (std::size_t i = 0; i < us.size(); ++i) {
      values[i] = results[i].value;
      errors[i] = results[i].abs_error_estimate;
      stats.evals += results[i].n_evals;
      stats.converged = stats.converged && results[i].converged;
    }
    return stats;
  };
  return quad_detail::adaptive(outer, box.u, spec, budget, true, inner_error);
}

// Nested levels meet tolerances relative to their own values, which can be
// far larger than a total that cancels. When a result misses its target only
// because of accumulated inner error, rerun with the nested tolerances
// tightened by the shortfall. `attempt(extra)` divides every nested tolerance
// by `extra` and reports the inner error part of its estimate.
template <class Attempt>
QuadResult with_inner_retries(const QuadSpec& spec, Budget& budget, Attempt&& attempt) {
  double extra = 1.0;
  std::uint64_t evals = 0;
  QuadResult r;
  for (int round = 0; round < 4; ++round) {
    double inner_error = 0.0;
    r = attempt(extra, inner_error);
    evals += r.n_evals;
    const double tol = tolerance_for(spec, r.value);
    const double own = r.abs_error_estimate - inner_error;
    if (r.converged || budget.exhausted() || !(inner_error > 0.5 * tol) || !(own <= 0.5 * tol)) break;
    extra *= std::max(4.0, 4.0 * inner_error / tol);
  }
  r.n_evals = evals;
  return r;
}

}  // namespace

QuadResult integrate_1d(const Integrand1D& f, Interval range, const QuadSpec& spec) {
  spec.validate();
  Budget budget(spec.max_evals);
  NodeFn leaf = [&](std::span<const double> x, std::span<double> values, std::span<double>) {
    f(x, values);
    return NodeStats{x.size(), true};
  };
  return quad_detail::adaptive(leaf, range, spec, budget, false);
}

QuadResult integrate_2d(const Integrand2D& f, Box2 box, const QuadSpec& spec) {
  spec.validate();
  Budget budget(spec.max_evals);
  InnerLine line = [&](double u, std::span<const double> v, std::span<double> values,
                       std::span<double>) {
    f(u, v, values);
    return NodeStats{v.size(), true};
  };
  return with_inner_retries(spec, budget, [&](double extra, double& inner_error) {
    return run_2d(line, false, box, spec, budget, spec.workers, extra, &inner_error);
  });
}

QuadResult integrate_4d(const Integrand4D& f, Box2 outer, Box2 inner, const QuadSpec& spec) {
  spec.validate();
  Budget budget(spec.max_evals);
  return with_inner_retries(spec, budget, [&](double extra, double& inner_error) {
    const QuadSpec inner_spec =
        tightened(spec, 100.0 * extra, outer.u.length() * outer.v.length());
    // Along t at fixed s: each node is a full inner 2D integral over (u, v).
    InnerLine line = [&](double s, std::span<const double> ts, std::span<double> values,
                         std::span<double> errors) {
      NodeStats stats;
      for (std::size_t j = 0; j < ts.size(); ++j) {
        const double t = ts[j];
        InnerLine leaf = [&](double u, std::span<const double> v, std::span<double> vals,
                             std::span<double>) {
          f(s, t, u, v, vals);
          return NodeStats{v.size(), true};
        };
        const QuadResult r = run_2d(leaf, false, inner, inner_spec, budget, 1);
        values[j] = r.value;
        errors[j] = r.abs_error_estimate;
        stats.evals += r.n_evals;
        stats.converged = stats.converged && r.converged;
      }
      return stats;
    };
    return run_2d(line, true, outer, spec, budget, spec.workers, extra, &inner_error);
  });
}

}  // namespace wpb
