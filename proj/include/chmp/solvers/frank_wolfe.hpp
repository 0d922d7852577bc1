#ifndef CHMP_SOLVERS_FRANK_WOLFE_HPP
#define CHMP_SOLVERS_FRANK_WOLFE_HPP

#include "chmp/solvers/common.hpp"

namespace chmp {

// Frank-Wolfe variants on min 1/2 |y - p|^2 over y in conv(A). The gradient
// at y is y - p, so the linear minimization oracle over the columns reads the
// same values v_i'(y - p) as the pivot scan.
//
// Termination, checked in this order every iteration:
//   |y - p| <= eps R                               -> EpsilonSolution
//   no pivot at y (min_i v_i'(y-p) > (|y|^2-|p|^2)/2) -> Witness
//   (y - p)'(y - s) <= |y - p| eps R / 2              -> GapCertificate
// where s is the FW atom. The last test bounds |y - p| - dist(p, conv A) by
// eps R, so it proves p outside whenever |y - p| > eps R.

inline SolveReport solve_fw(const PointSet& points, const QueryContext& q,
                            const SolverConfig& cfg) {
  detail::check_inputs(points, q, cfg);
  const detail::Stopwatch clock;
  const std::int64_t cap = cfg.iteration_cap(points.size());
  const double eps_r = cfg.eps * q.radius;
  std::vector<TraceRecord> trace;

  Iterate it = Iterate::vertex(points, q.nearest);
  for (std::int64_t k = 0;; ++k) {
    detail::observe(cfg, k, it);
    const Vector& y = it.point();
    const Vector residual = y - q.p;
    const double delta = residual.norm();
    if (delta <= eps_r) {
      return detail::finish(EpsilonSolution{std::move(it), delta}, k, clock,
                            std::move(trace));
    }
    const PivotScan scan = scan_pivots(points, q, y);
    if (auto cert = witness_check(points, scan, it, q, cfg.tol)) {
      return detail::finish(Witness{std::move(*cert)}, k, clock, std::move(trace));
    }
    const Index s = scan.argmin;
    // scan values are grad'v_i = v_i'(y - p), so grad'(y - s) = (y - p)'y - value_s
    const double gap = residual.dot(y) - scan.min_value;
    if (gap <= 0.5 * delta * eps_r) {
      return detail::finish(GapCertificate{std::move(it), gap, delta}, k, clock,
                            std::move(trace));
    }
    if (k == cap) {
      return detail::finish(Exhausted{std::move(it), delta}, k, clock, std::move(trace));
    }

    // Exact line search; the same closed form as the triangle step.
    const Vector vs = points.column(s);
    const double gamma = line_search_gamma(y, vs, q);
    if (cfg.trace) {
      trace.push_back({delta, sin_theta(y, vs, q.p), StepKind::FrankWolfe, gamma,
                       std::numeric_limits<double>::quiet_NaN(), s});
    }
    it.step_toward(points, s, gamma);
  }
}

/// Weights below this are zeroed (and the rest renormalized) after each
/// away-step update.
inline constexpr double kAsfwWeightFloor = 1e-15;

inline SolveReport solve_asfw(const PointSet& points, const QueryContext& q,
                              const SolverConfig& cfg) {
  detail::check_inputs(points, q, cfg);
  const detail::Stopwatch clock;
  const std::int64_t cap = cfg.iteration_cap(points.size());
  const double eps_r = cfg.eps * q.radius;
  std::vector<TraceRecord> trace;

  Iterate it = Iterate::vertex(points, q.nearest);
  for (std::int64_t k = 0;; ++k) {
    detail::observe(cfg, k, it);
    const Vector& y = it.point();
    const Vector residual = y - q.p;
    const double delta = residual.norm();
    if (delta <= eps_r) {
      return detail::finish(EpsilonSolution{std::move(it), delta}, k, clock,
                            std::move(trace));
    }
    const PivotScan scan = scan_pivots(points, q, y);
    if (auto cert = witness_check(points, scan, it, q, cfg.tol)) {
      return detail::finish(Witness{std::move(*cert)}, k, clock, std::move(trace));
    }

    // grad'v_i = v_i'(y - p) is the scan value; grad'y = (y - p)'y.
    const double grad_y = residual.dot(y);
    const Index s = scan.argmin;
    const double fw_slope = scan.min_value - grad_y;  // grad'(s - y)
    if (-fw_slope <= 0.5 * delta * eps_r) {
      return detail::finish(GapCertificate{std::move(it), -fw_slope, delta}, k, clock,
                            std::move(trace));
    }
    if (k == cap) {
      return detail::finish(Exhausted{std::move(it), delta}, k, clock, std::move(trace));
    }

    Index w = it.support().front();
    for (Index i : it.support()) {
      if (scan.values[i] > scan.values[w]) w = i;
    }
    const double away_slope = grad_y - scan.values[w];  // grad'(y - w)

    if (fw_slope <= away_slope) {
      const Vector direction = points.column(s) - y;
      const double gamma = std::clamp(-fw_slope / direction.squaredNorm(), 0.0, 1.0);
      if (cfg.trace) {
        trace.push_back({delta, sin_theta(y, points.column(s), q.p), StepKind::FrankWolfe,
                         gamma, std::numeric_limits<double>::quiet_NaN(), s});
      }
      it.step_toward(points, s, gamma);
    } else {
      const double alpha_w = it.weight(w);
      const double gamma_max = alpha_w / (1.0 - alpha_w);
      const Vector direction = y - points.column(w);
      const double gamma_star = -away_slope / direction.squaredNorm();
      const bool drop = gamma_star >= gamma_max;
      const double gamma = drop ? gamma_max : gamma_star;
      if (cfg.trace) {
        trace.push_back({delta, std::numeric_limits<double>::quiet_NaN(),
                         drop ? StepKind::Drop : StepKind::Away, gamma,
                         std::numeric_limits<double>::quiet_NaN(), w});
      }
      it.step_away(points, w, gamma, drop);
    }
    it.prune(points, kAsfwWeightFloor);
  }
}

}  // namespace chmp

#endif  // CHMP_SOLVERS_FRANK_WOLFE_HPP
