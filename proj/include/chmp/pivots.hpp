#ifndef CHMP_PIVOTS_HPP
#define CHMP_PIVOTS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "chmp/iterate.hpp"
#include "chmp/point_set.hpp"
#include "chmp/rng.hpp"

namespace chmp {

/// Floating-point slack for the pivot and witness inequalities.
struct Tolerances {
  enum class WitnessMargin { Strict, Relative };

  double pivot = 0.0;  ///< tau_p, added to the right side of every pivot test
  WitnessMargin witness_margin = WitnessMargin::Strict;

  /// tau_w for an iterate with squared norm `pk_norm2`.
  [[nodiscard]] double witness(double pk_norm2, double p_norm2) const {
    return witness_margin == WitnessMargin::Relative
               ? 1e-12 * (pk_norm2 + p_norm2)
               : 0.0;
  }
};

enum class PivotPolicy { First, RandomAmongAll, Greedy };

/// Smallest step accepted from the closed-form line search.
inline constexpr double kGammaFloor = 1e-16;

/// All n values v_i'(p_k - p) for one iterate, with the two thresholds they
/// are compared against:
///   simple pivot  <=>  value <= (|p_k|^2 - |p|^2) / 2
///   strict pivot  <=>  value <= p'(p_k - p)
struct PivotScan {
  Vector values;
  double threshold = 0.0;
  double strict_threshold = 0.0;
  Index argmin = 0;
  double min_value = 0.0;

  [[nodiscard]] bool is_pivot(Index i, const Tolerances& tol = {}) const {
    return 2.0 * values[i] <= 2.0 * threshold + tol.pivot;
  }
  [[nodiscard]] bool is_strict_pivot(Index i, const Tolerances& tol = {}) const {
    return values[i] - strict_threshold <= tol.pivot;
  }
  /// min_i v_i'(p_k - p) - (|p_k|^2 - |p|^2)/2; positive means no pivot.
  [[nodiscard]] double witness_margin() const { return min_value - threshold; }
};

inline PivotScan scan_pivots(const PointSet& points, const QueryContext& q,
                             const Vector& pk) {
  PivotScan scan;
  scan.values = points.matrix().transpose() * pk - q.dots;
  const double pk_norm2 = pk.squaredNorm();
  scan.threshold = 0.5 * (pk_norm2 - q.pnorm2);
  scan.strict_threshold = q.p.dot(pk) - q.pnorm2;
  scan.min_value = scan.values.minCoeff(&scan.argmin);
  return scan;
}

/// Pivot test through the cached inner products:
/// 2 v_i'(p_k - p) <= |p_k|^2 - |p|^2 + tau_p. Costs one inner product.
inline bool is_pivot(const PointSet& points, Index i, const Iterate& it,
                     const QueryContext& q, const Tolerances& tol = {}) {
  const Vector& pk = it.point();
  const double lhs = 2.0 * (points.column(i).dot(pk) - q.dots[i]);
  return lhs <= pk.squaredNorm() - q.pnorm2 + tol.pivot;
}

/// (p_k - p)'(v_i - p) <= tau_p, i.e. the angle at p is at least pi/2.
inline bool is_strict_pivot(const PointSet& points, Index i, const Iterate& it,
                            const QueryContext& q, const Tolerances& tol = {}) {
  const Vector& pk = it.point();
  const double value = points.column(i).dot(pk) - q.dots[i] - q.p.dot(pk) + q.pnorm2;
  return value <= tol.pivot;
}

/// The four algebraically equivalent simple-pivot conditions, each written
/// as "margin <= 0". Used to cross-check the characterizations.
inline std::array<double, 4> pivot_condition_margins(const Vector& v,
                                                     const Vector& pk,
                                                     const Vector& p) {
  const Vector dk = pk - p;
  return {
      (v - p).squaredNorm() - (v - pk).squaredNorm(),
      2.0 * v.dot(dk) - (pk.squaredNorm() - p.squaredNorm()),
      dk.dot(v - pk) + 0.5 * dk.squaredNorm(),
      dk.dot(v - p) - 0.5 * dk.squaredNorm(),
  };
}

/// The four equivalent strict-pivot conditions, as "margin <= 0".
inline std::array<double, 4> strict_pivot_condition_margins(const Vector& v,
                                                            const Vector& pk,
                                                            const Vector& p) {
  const Vector dk = pk - p;
  return {
      (v - p).squaredNorm() - (v - pk).squaredNorm() + dk.squaredNorm(),
      2.0 * v.dot(dk) - 2.0 * p.dot(dk),
      dk.dot(v - pk) + dk.squaredNorm(),
      dk.dot(v - p),
  };
}

struct PivotChoice {
  Index index = 0;
  double value = 0.0;  ///< v_index'(p_k - p)
};

namespace detail {

inline bool coincides(const PointSet& points, Index i, const Vector& pk) {
  return (points.column(i) - pk).squaredNorm() == 0.0;
}

}  // namespace detail

/// Pick a pivot from a finished scan. Columns equal to p_k are never
/// returned. Empty result means no pivot exists.
inline std::optional<PivotChoice> select_pivot(const PointSet& points,
                                               const PivotScan& scan,
                                               const Vector& pk,
                                               PivotPolicy policy, Rng& rng,
                                               const Tolerances& tol = {}) {
  const Index n = scan.values.size();
  switch (policy) {
    case PivotPolicy::First:
      for (Index i = 0; i < n; ++i) {
        if (scan.is_pivot(i, tol) && !detail::coincides(points, i, pk)) {
          return PivotChoice{i, scan.values[i]};
        }
      }
      return std::nullopt;
    case PivotPolicy::RandomAmongAll: {
      std::vector<Index> pivots;
      for (Index i = 0; i < n; ++i) {
        if (scan.is_pivot(i, tol)) pivots.push_back(i);
      }
      while (!pivots.empty()) {
        const auto pick = static_cast<std::size_t>(rng.uniform_index(pivots.size()));
        const Index i = pivots[pick];
        if (!detail::coincides(points, i, pk)) return PivotChoice{i, scan.values[i]};
        pivots.erase(pivots.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      return std::nullopt;
    }
    case PivotPolicy::Greedy: {
      // minCoeff keeps the lowest index among ties.
      const Index i = scan.argmin;
      if (!scan.is_pivot(i, tol) || detail::coincides(points, i, pk)) {
        return std::nullopt;
      }
      return PivotChoice{i, scan.values[i]};
    }
  }
  return std::nullopt;
}

inline std::optional<PivotChoice> find_pivot(const PointSet& points,
                                             const Iterate& it,
                                             const QueryContext& q,
                                             PivotPolicy policy, Rng& rng,
                                             const Tolerances& tol = {}) {
  const PivotScan scan = scan_pivots(points, q, it.point());
  return select_pivot(points, scan, it.point(), policy, rng, tol);
}

/// Closed-form minimizer of |p - ((1-g) p_k + g v)| over g, clamped to
/// [kGammaFloor, 1].
inline double line_search_gamma(const Vector& pk, const Vector& v,
                                 const QueryContext& q) {
  const Vector direction = v - pk;
  const double len2 = direction.squaredNorm();
  if (len2 == 0.0) throw DegenerateError("pivot coincides with the iterate");
  const double gamma = -(pk - q.p).dot(direction) / len2;
  return std::clamp(gamma, kGammaFloor, 1.0);
}

inline double line_search_gamma(const PointSet& points, const Iterate& it,
                                Index j, const QueryContext& q) {
  return line_search_gamma(it.point(), Vector(points.column(j)), q);
}

/// Returns a fresh iterate (1 - gamma) it + gamma v_j.
inline Iterate apply_step(const PointSet& points, const Iterate& it, Index j,
                          double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw InputError("step size must lie in (0, 1]");
  }
  Iterate next = it;
  next.step_toward(points, j, gamma);
  return next;
}

/// Sine of the angle at p_k between the rays towards p and towards v.
inline double sin_theta(const Vector& pk, const Vector& v, const Vector& p) {
  const Vector to_p = p - pk;
  const Vector to_v = v - pk;
  const double denom = to_p.norm() * to_v.norm();
  if (denom == 0.0) throw DegenerateError("angle undefined for a zero-length ray");
  const double cosine = std::clamp(to_p.dot(to_v) / denom, -1.0, 1.0);
  return std::sqrt(std::max(0.0, 1.0 - cosine * cosine));
}

}  // namespace chmp

#endif  // CHMP_PIVOTS_HPP
