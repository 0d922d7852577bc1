#ifndef CHMP_SOLVERS_TRIANGLE_HPP
#define CHMP_SOLVERS_TRIANGLE_HPP

#include "chmp/solvers/common.hpp"

namespace chmp {

/// Triangle Algorithm. Starts at the column nearest p; each iteration tests
/// for an eps-solution, then for a witness, then moves to the closest point
/// of [p_k, v_j] for a pivot v_j chosen by `cfg.pivot_policy`.
inline SolveReport solve_ta(const PointSet& points, const QueryContext& q,
                            const SolverConfig& cfg) {
  detail::check_inputs(points, q, cfg);
  const detail::Stopwatch clock;
  const std::int64_t cap = cfg.iteration_cap(points.size());
  const double eps_r = cfg.eps * q.radius;
  Rng rng(cfg.seed);
  std::vector<TraceRecord> trace;

  Iterate it = Iterate::vertex(points, q.nearest);
  for (std::int64_t k = 0;; ++k) {
    detail::observe(cfg, k, it);
    const double delta = (it.point() - q.p).norm();
    if (delta <= eps_r) {
      return detail::finish(EpsilonSolution{std::move(it), delta}, k, clock,
                            std::move(trace));
    }
    const PivotScan scan = scan_pivots(points, q, it.point());
    if (auto cert = witness_check(points, scan, it, q, cfg.tol)) {
      return detail::finish(Witness{std::move(*cert)}, k, clock, std::move(trace));
    }
    if (k == cap) {
      return detail::finish(Exhausted{std::move(it), delta}, k, clock, std::move(trace));
    }

    auto pivot = select_pivot(points, scan, it.point(), cfg.pivot_policy, rng, cfg.tol);
    // Inside the tau_w band neither test fires; fall back to the argmin.
    const Index j = pivot ? pivot->index : scan.argmin;
    const Vector vj = points.column(j);
    if (detail::coincides(points, j, it.point())) {
      // Rounding left no usable pivot and no verifiable witness.
      return detail::finish(Exhausted{std::move(it), delta}, k, clock, std::move(trace));
    }
    const double gamma = line_search_gamma(it.point(), vj, q);
    if (cfg.trace) {
      trace.push_back({delta, sin_theta(it.point(), vj, q.p), StepKind::Pivot, gamma,
                       std::numeric_limits<double>::quiet_NaN(), j});
    }
    it.step_toward(points, j, gamma);
  }
}

/// Greedy Triangle: the pivot is the global argmin of v_i'(p_k - p). The
/// stop test on the argmin is the strict-pivot inequality; a witness is only
/// emitted once the simple-pivot test also fails, otherwise the argmin (then
/// a simple pivot) is used and iteration continues. For p = 0 this is von
/// Neumann's algorithm.
inline SolveReport solve_gt(const PointSet& points, const QueryContext& q,
                            const SolverConfig& cfg) {
  detail::check_inputs(points, q, cfg);
  const detail::Stopwatch clock;
  const std::int64_t cap = cfg.iteration_cap(points.size());
  const double eps_r = cfg.eps * q.radius;
  std::vector<TraceRecord> trace;

  Iterate it = Iterate::vertex(points, q.nearest);
  for (std::int64_t k = 0;; ++k) {
    detail::observe(cfg, k, it);
    const double delta = (it.point() - q.p).norm();
    if (delta <= eps_r) {
      return detail::finish(EpsilonSolution{std::move(it), delta}, k, clock,
                            std::move(trace));
    }
    const PivotScan scan = scan_pivots(points, q, it.point());
    const Index j = scan.argmin;
    if (!scan.is_strict_pivot(j, cfg.tol)) {
      if (auto cert = witness_check(points, scan, it, q, cfg.tol)) {
        return detail::finish(Witness{std::move(*cert)}, k, clock, std::move(trace));
      }
    }
    if (k == cap) {
      return detail::finish(Exhausted{std::move(it), delta}, k, clock, std::move(trace));
    }

    const Vector vj = points.column(j);
    if (detail::coincides(points, j, it.point())) {
      return detail::finish(Exhausted{std::move(it), delta}, k, clock, std::move(trace));
    }
    const double gamma = line_search_gamma(it.point(), vj, q);
    if (cfg.trace) {
      trace.push_back({delta, sin_theta(it.point(), vj, q.p), StepKind::Pivot, gamma,
                       std::numeric_limits<double>::quiet_NaN(), j});
    }
    it.step_toward(points, j, gamma);
  }
}

}  // namespace chmp

#endif  // CHMP_SOLVERS_TRIANGLE_HPP
