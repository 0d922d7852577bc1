#ifndef CHMP_LP_FEASIBILITY_HPP
#define CHMP_LP_FEASIBILITY_HPP

#include <cmath>
#include <string>
#include <variant>

#include "chmp/instances.hpp"
#include "chmp/solvers.hpp"

namespace chmp {

/// {x : Ax = b, x >= 0, e'x <= N}.
struct LpInstance {
  Matrix a;
  Vector b;
  double bound = 1200.0;  ///< N

  void validate() const {
    if (a.rows() < 1 || a.cols() < 1) throw InputError("LP matrix must be nonempty");
    if (b.size() != a.rows()) throw InputError("b length does not match the rows of A");
    if (!a.allFinite() || !b.allFinite()) throw InputError("LP data has non-finite entries");
    if (!(bound > 0.0) || !std::isfinite(bound)) throw InputError("LP bound N must be positive");
  }
};

/// Embedded membership problem in R^{m+2} with n+2 columns
/// (a_i; 1; 0), (0; 1; 0), (-b; -N; 1) and query (0; 0; 1/(N+1)).
inline Instance build_chmp(const LpInstance& lp) {
  lp.validate();
  const Index m = lp.a.rows();
  const Index n = lp.a.cols();
  Matrix at = Matrix::Zero(m + 2, n + 2);
  at.topLeftCorner(m, n) = lp.a;
  at.row(m).head(n + 1).setOnes();
  at.col(n + 1).head(m) = -lp.b;
  at(m, n + 1) = -lp.bound;
  at(m + 1, n + 1) = 1.0;
  Vector p = Vector::Zero(m + 2);
  p[m + 1] = 1.0 / (lp.bound + 1.0);
  return {PointSet(std::move(at)), std::move(p)};
}

inline constexpr double kDegenerateGamma = 1e-12;

struct Recovery {
  Vector x;                  ///< alpha / gamma
  double gamma = 0.0;        ///< weight of the last column
  double slack = 0.0;        ///< beta / gamma, the unused budget
  double residual = 0.0;     ///< |A x - b|
  double sum_error = 0.0;    ///< |e'x + beta/gamma - N|
  double gamma_error = 0.0;  ///< |gamma - 1/(N+1)|
  double bound = 0.0;        ///< eps R / gamma
  [[nodiscard]] bool within_bounds(double eps_r) const {
    return residual <= bound && sum_error <= bound && gamma_error <= eps_r;
  }
};

/// x = alpha/gamma from weights (alpha; beta; gamma) over the n+2 columns.
inline Recovery recover_solution(const LpInstance& lp, const Vector& weights, double eps_r) {
  const Index n = lp.a.cols();
  if (weights.size() != n + 2) throw InputError("recovery needs n + 2 weights");
  Recovery r;
  r.gamma = weights[n + 1];
  if (!(r.gamma > kDegenerateGamma)) {
    throw DegenerateError("last weight too small to recover an LP solution");
  }
  r.x = weights.head(n) / r.gamma;
  r.slack = weights[n] / r.gamma;
  r.residual = (lp.a * r.x - lp.b).norm();
  r.sum_error = std::abs(r.x.sum() + r.slack - lp.bound);
  r.gamma_error = std::abs(r.gamma - 1.0 / (lp.bound + 1.0));
  r.bound = eps_r / r.gamma;
  return r;
}

struct Feasible {
  Recovery solution;
};
struct Infeasible {
  WitnessCertificate certificate;
};
struct Inconclusive {
  std::string reason;
};

struct FeasibilityVerdict {
  std::variant<Feasible, Infeasible, Inconclusive> verdict;
  SolveReport report;
  double eps_r = 0.0;

  [[nodiscard]] bool feasible() const { return std::holds_alternative<Feasible>(verdict); }
  [[nodiscard]] bool infeasible() const { return std::holds_alternative<Infeasible>(verdict); }
  [[nodiscard]] std::string_view label() const {
    return feasible() ? "feasible" : infeasible() ? "infeasible" : "inconclusive";
  }
};

/// Defaults for the embedded problem: eps = 1e-6, cap 10^6, SPG memory 60
/// and spectral range [1e-10, 1e10].
inline SolverConfig lp_solver_config() {
  SolverConfig cfg;
  cfg.eps = 1e-6;
  cfg.maxit = 1000000;
  cfg.spg.memory = 60;
  cfg.spg.lambda_min = 1e-10;
  cfg.spg.lambda_max = 1e10;
  return cfg;
}

inline FeasibilityVerdict solve_feasibility(const LpInstance& lp, SolverKind solver,
                                            const SolverConfig& cfg) {
  const Instance inst = build_chmp(lp);
  const QueryContext q = build_query(inst.points, inst.p);
  FeasibilityVerdict out;
  out.eps_r = cfg.eps * q.radius;
  out.report = solve(solver, inst.points, q, cfg);
  switch (out.report.kind()) {
    case OutcomeKind::Epsilon:
    case OutcomeKind::Projection:
      if (out.report.kind() == OutcomeKind::Projection && out.report.distance() > out.eps_r) {
        out.verdict = Inconclusive{"projection distance exceeds eps R"};
        break;
      }
      try {
        out.verdict = Feasible{recover_solution(lp, out.report.iterate().weights(), out.eps_r)};
      } catch (const DegenerateError& e) {
        out.verdict = Inconclusive{e.what()};
      }
      break;
    case OutcomeKind::Witness:
      out.verdict = Infeasible{*out.report.certificate()};
      break;
    case OutcomeKind::Gap: {
      // A gap proves infeasibility but carries no hyperplane; report it only
      // if the final iterate happens to be a witness as well.
      if (auto cert = witness_check(inst.points, out.report.iterate(), q, cfg.tol)) {
        out.verdict = Infeasible{std::move(*cert)};
      } else {
        out.verdict = Inconclusive{"relative-error gap certificate without a witness"};
      }
      break;
    }
    case OutcomeKind::Exhausted:
      out.verdict = Inconclusive{"iteration cap reached"};
      break;
  }
  return out;
}

/// Columns a_i = e + u_i with u_i uniform on the unit sphere, resampled until
/// every entry is nonnegative. Feasible: b = A x with x ~ U(0,1)^n; infeasible:
/// the first entry of that b is negated.
inline LpInstance gen_lp_instance(Index m, Index n, bool feasible, double bound, Rng& rng) {
  if (m < 1 || n < 1) throw ConfigError("LP generator needs m, n >= 1");
  LpInstance lp;
  lp.bound = bound;
  lp.a.resize(m, n);
  for (Index j = 0; j < n; ++j) {
    for (;;) {
      Vector u(m);
      double norm = 0.0;
      do {
        for (Index i = 0; i < m; ++i) u[i] = rng.normal();
        norm = u.norm();
      } while (norm == 0.0);
      lp.a.col(j) = Vector::Ones(m) + u / norm;
      if ((lp.a.col(j).array() >= 0.0).all()) break;
    }
  }
  Vector x(n);
  for (Index j = 0; j < n; ++j) x[j] = rng.uniform();
  lp.b = lp.a * x;
  if (!feasible) lp.b[0] = -lp.b[0];
  lp.validate();
  return lp;
}

struct GeometryBounds {
  double diameter_lower = 0.0;  ///< D >= N + 1
  double omega_upper = 1.0;
  double ratio = 0.0;           ///< 1 / ((N+1)(m+3))
  double asfw_factor = 0.0;     ///< 1 - ratio^2 / 4
};

inline GeometryBounds geometry_bounds(const LpInstance& lp) {
  lp.validate();
  GeometryBounds g;
  g.diameter_lower = lp.bound + 1.0;
  g.omega_upper = 1.0;
  g.ratio = 1.0 / ((lp.bound + 1.0) * static_cast<double>(lp.a.rows() + 3));
  g.asfw_factor = 1.0 - 0.25 * g.ratio * g.ratio;
  return g;
}

}  // namespace chmp

#endif  // CHMP_LP_FEASIBILITY_HPP
