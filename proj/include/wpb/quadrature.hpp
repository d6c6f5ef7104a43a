#pragma once

// Deterministic globally adaptive Gauss-Kronrod quadrature in 1, 2 and 4
// dimensions. Higher dimensions are iterated 1D integrals; each level
// integrates the inner level's error estimate alongside its value, so the
// reported error covers every level.

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>

namespace wpb {

enum class GkRule { gk15, gk21 };

struct QuadSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_subdivisions = 2000;  // per adaptive 1D integral
  GkRule rule = GkRule::gk15;
  std::uint64_t max_evals = 5'000'000'000ULL;  // integrand evaluations, all levels
  unsigned workers = 1;                          // threads for the outermost level

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::uint64_t n_evals = 0;
  bool converged = false;
};

/// The tolerance a result must meet: max(abs_tol, rel_tol * |value|).
double tolerance_for(const QuadSpec& spec, double value);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct Box2 {
  Interval u;  // outer axis
  Interval v;  // inner axis
};

// Integrands are evaluated in batches along the innermost axis.
using Integrand1D = std::function<void(std::span<const double> x, std::span<double> out)>;
using Integrand2D =
    std::function<void(double u, std::span<const double> v, std::span<double> out)>;
using Integrand4D = std::function<void(double s, double t, double u, std::span<const double> v,
                                       std::span<double> out)>;

QuadResult integrate_1d(const Integrand1D& f, Interval range, const QuadSpec& spec);

/// Iterated: outer adaptive over u; each outer node integrates over v with
/// tolerances tightened by 10 (the absolute one also divided by |u range|).
QuadResult integrate_2d(const Integrand2D& f, Box2 box, const QuadSpec& spec);

/// Iterated over (s, t) outside and (u, v) inside; the inner 2D integrals run
/// with tolerances tightened by 100 (absolute also divided by |s||t|).
QuadResult integrate_4d(const Integrand4D& f, Box2 outer, Box2 inner, const QuadSpec& spec);

/// Adapts a pointwise callable to the batch interface.
template <class F>
Integrand1D pointwise_1d(F f) {
  return [f](std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
  };
}

template <class F>
Integrand2D pointwise_2d(F f) {
  return [f](double u, std::span<const double> v, std::span<double> out) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f(u, v[i]);
  };
}

namespace quad_detail {

/// A Gauss-Kronrod pair on [-1, 1], padded with zero weights to a multiple of 4.
struct GkTable {
  std::span<const double> nodes;
  std::span<const double> kronrod_weights;
  std::span<const double> gauss_weights;  // zero at Kronrod-only nodes
  std::size_t size;                       // number of real nodes
};

const GkTable& table(GkRule rule);

struct NodeStats {
  std::uint64_t evals = 0;
  bool converged = true;  // every nested integral behind these values converged
};

/// Evaluates values and, for nested integrals, their error estimates at a batch of nodes.
using NodeFn = std::function<NodeStats(std::span<const double> x, std::span<double> values,
                                       std::span<double> inner_errors)>;

struct Budget {
  std::uint64_t limit;
  std::atomic<std::uint64_t> used{0};

  explicit Budget(std::uint64_t l) : limit(l) {}
  bool exhausted() const { return used.load(std::memory_order_relaxed) >= limit; }
  void charge(std::uint64_t n) { used.fetch_add(n, std::memory_order_relaxed); }
};

/// The adaptive 1D engine shared by every level. Leaf levels (`has_inner`
/// false) charge their evaluations to the budget; nested levels add the
/// integral of the reported inner errors to their own estimate.
/// `inner_error`, if given, receives the part of the estimate that came from
/// inner levels.
QuadResult adaptive(const NodeFn& fn, Interval range, const QuadSpec& spec, Budget& budget,
                    bool has_inner, double* inner_error = nullptr);

double compensated_sum(std::span<const double> terms);

}  // namespace quad_detail

}  // namespace wpb
