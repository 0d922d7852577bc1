#ifndef CHMP_SOLVERS_SPG_HPP
#define CHMP_SOLVERS_SPG_HPP

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "chmp/simplex_projection.hpp"
#include "chmp/solvers/common.hpp"

namespace chmp {

enum class SpgMode {
  DualityStopping,  ///< eps-solution / witness / relative-error certificate
  Proj,             ///< classic |d_k| < proj_eps test; approximates the projection
};

inline constexpr std::uint64_t kPowerIterationSeed = 0x5eed5eedULL;
inline constexpr int kPowerIterations = 50;
inline constexpr double kLipschitzInflation = 1.01;

/// Estimate of |A|^2 (largest eigenvalue of A'A) from 50 power iterations on
/// a fixed-seed start, inflated by 1%.
inline double lipschitz_estimate(const PointSet& points) {
  Rng rng(kPowerIterationSeed);
  Vector x(points.size());
  for (Index i = 0; i < x.size(); ++i) x[i] = rng.normal();
  double rayleigh = 0.0;
  for (int k = 0; k < kPowerIterations; ++k) {
    const double norm = x.norm();
    if (norm == 0.0) break;
    x /= norm;
    const Vector ax = points.matrix() * x;
    rayleigh = ax.squaredNorm();
    x = points.matrix().transpose() * ax;
  }
  return kLipschitzInflation * rayleigh;
}

/// Spectral projected gradient on min 1/2 |Ax - p|^2 over the unit simplex,
/// started at the vertex nearest p, with a nonmonotone (max over the last M
/// values) halving line search and Barzilai-Borwein steps clamped to
/// [lambda_min, lambda_max].
inline SolveReport solve_spg(const PointSet& points, const QueryContext& q,
                             const SolverConfig& cfg,
                             SpgMode mode = SpgMode::DualityStopping) {
  detail::check_inputs(points, q, cfg);
  const detail::Stopwatch clock;
  const Matrix& a = points.matrix();
  const SpgParams& par = cfg.spg;
  const std::int64_t cap = cfg.iteration_cap(points.size());
  const double eps_r = cfg.eps * q.radius;
  const bool duality = mode == SpgMode::DualityStopping;
  // Gap-test scale eps R / (3 L D) with D = sqrt(2), the simplex diameter.
  const double gap_scale =
      duality ? eps_r / (3.0 * lipschitz_estimate(points) * std::numbers::sqrt2) : 0.0;
  std::vector<TraceRecord> trace;

  Vector x = Vector::Zero(points.size());
  x[q.nearest] = 1.0;
  Vector ax = points.column(q.nearest);
  Vector residual = ax - q.p;
  Vector grad = a.transpose() * residual;
  double lambda = par.lambda0;
  std::deque<double> history{0.5 * residual.squaredNorm()};

  auto as_iterate = [&](const Vector& weights, const Vector& point) {
    Iterate it;
    it.assign(weights, point);
    return it;
  };

  for (std::int64_t k = 0;; ++k) {
    const double delta = residual.norm();
    if (cfg.observer) cfg.observer(k, as_iterate(x, ax));

    if (duality) {
      if (delta <= eps_r) {
        return detail::finish(EpsilonSolution{as_iterate(x, ax), delta}, k, clock,
                              std::move(trace));
      }
      // grad_i = v_i'(Ax - p): the pivot-scan values at p_k = Ax.
      PivotScan scan;
      scan.values = grad;
      scan.threshold = 0.5 * (ax.squaredNorm() - q.pnorm2);
      scan.strict_threshold = q.p.dot(ax) - q.pnorm2;
      scan.min_value = grad.minCoeff(&scan.argmin);
      Iterate it = as_iterate(x, ax);
      if (auto cert = witness_check(points, scan, it, q, cfg.tol)) {
        return detail::finish(Witness{std::move(*cert)}, k, clock, std::move(trace));
      }
    }

    const Vector x_bar = simplex_project(x - lambda * grad);
    const Vector d = x_bar - x;
    const double d_norm = d.norm();
    const Vector ad = a * d;

    if (duality) {
      const double bar_delta = (residual + ad).norm();
      if (d_norm <= bar_delta * gap_scale) {
        Iterate it = as_iterate(x_bar, ax + ad);
        if (bar_delta <= eps_r) {
          return detail::finish(EpsilonSolution{std::move(it), bar_delta}, k, clock,
                                std::move(trace));
        }
        return detail::finish(GapCertificate{std::move(it), d_norm, bar_delta}, k, clock,
                              std::move(trace));
      }
    } else if (d_norm < cfg.proj_eps) {
      return detail::finish(Projection{as_iterate(x, ax), delta}, k, clock,
                            std::move(trace));
    }
    if (k == cap) {
      return detail::finish(Exhausted{as_iterate(x, ax), delta}, k, clock,
                            std::move(trace));
    }

    // Nonmonotone line search against the max of the last M objective values.
    const double f_max = *std::max_element(history.begin(), history.end());
    const double slope = grad.dot(d);
    double gamma = 1.0;
    double f_trial = 0.5 * (residual + ad).squaredNorm();
    while (f_trial > f_max + par.eta * gamma * slope && gamma > kGammaFloor) {
      gamma *= 0.5;
      f_trial = 0.5 * (residual + gamma * ad).squaredNorm();
    }

    if (cfg.trace) {
      trace.push_back({delta, std::numeric_limits<double>::quiet_NaN(), StepKind::Projected,
                       gamma, lambda, -1});
    }

    x = (x + gamma * d).cwiseMax(0.0);
    ax += gamma * ad;
    residual = ax - q.p;
    const Vector grad_next = a.transpose() * residual;
    const Vector s = gamma * d;
    const Vector u = grad_next - grad;
    grad = grad_next;
    const double su = s.dot(u);
    lambda = su <= 0.0 ? par.lambda_max
                       : std::clamp(s.squaredNorm() / su, par.lambda_min, par.lambda_max);

    history.push_back(f_trial);
    while (static_cast<int>(history.size()) > par.memory) history.pop_front();
  }
}

}  // namespace chmp

#endif  // CHMP_SOLVERS_SPG_HPP
