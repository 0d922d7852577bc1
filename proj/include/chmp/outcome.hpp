#ifndef CHMP_OUTCOME_HPP
#define CHMP_OUTCOME_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chmp/witness.hpp"

namespace chmp {

struct SpgParams {
  int memory = 15;  ///< M, nonmonotone window
  double eta = 1e-4;
  double lambda_min = 1e-8;
  double lambda_max = 1e8;
  double lambda0 = 1.0;
};

/// Default iteration cap min{max{1000n, 10000}, 10^6}.
inline std::int64_t default_maxit(Index n) {
  return std::min<std::int64_t>(std::max<std::int64_t>(1000 * static_cast<std::int64_t>(n), 10000),
                                1000000);
}

struct SolverConfig {
  double eps = 1e-4;
  std::optional<std::int64_t> maxit;  ///< unset: default_maxit(n)
  PivotPolicy pivot_policy = PivotPolicy::RandomAmongAll;
  std::uint64_t seed = 0;
  SpgParams spg;
  double proj_eps = 1e-9;  ///< classic |d_k| tolerance in projection mode
  Tolerances tol;
  bool trace = false;
  /// Called with (k, iterate) before every termination test.
  std::function<void(std::int64_t, const Iterate&)> observer;

  [[nodiscard]] std::int64_t iteration_cap(Index n) const {
    return maxit ? *maxit : default_maxit(n);
  }

  void validate() const {
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
    if (maxit && *maxit < 1) throw ConfigError("maxit must be >= 1");
    if (spg.memory < 1) throw ConfigError("SPG memory M must be >= 1");
    if (!(spg.eta > 0.0 && spg.eta < 1.0)) throw ConfigError("SPG eta must lie in (0, 1)");
    if (!(spg.lambda_min > 0.0 && spg.lambda_min <= spg.lambda_max)) {
      throw ConfigError("SPG needs 0 < lambda_min <= lambda_max");
    }
    if (!(spg.lambda0 >= spg.lambda_min && spg.lambda0 <= spg.lambda_max)) {
      throw ConfigError("SPG lambda0 must lie in [lambda_min, lambda_max]");
    }
    if (!(proj_eps > 0.0)) throw ConfigError("proj_eps must be positive");
  }
};

struct EpsilonSolution {
  Iterate iterate;
  double delta = 0.0;  ///< |p_k - p| <= eps R
};

struct Witness {
  WitnessCertificate certificate;
};

/// The relative-error test proved p outside conv(A) without a witness.
struct GapCertificate {
  Iterate iterate;
  double gap = 0.0;
  double delta = 0.0;
};

struct Exhausted {
  Iterate iterate;
  double delta = 0.0;
};

/// Projection mode only: approximate nearest point of conv(A) to p.
struct Projection {
  Iterate iterate;
  double distance = 0.0;
};

using SolveOutcome =
    std::variant<EpsilonSolution, Witness, GapCertificate, Exhausted, Projection>;

enum class OutcomeKind { Epsilon, Witness, Gap, Exhausted, Projection };

inline OutcomeKind kind_of(const SolveOutcome& outcome) {
  return static_cast<OutcomeKind>(outcome.index());
}

inline std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Epsilon: return "epsilon";
    case OutcomeKind::Witness: return "witness";
    case OutcomeKind::Gap: return "gap";
    case OutcomeKind::Exhausted: return "exhausted";
    case OutcomeKind::Projection: return "projection";
  }
  return "unknown";
}

/// The iterate an outcome ends on.
inline const Iterate& final_iterate(const SolveOutcome& outcome) {
  return std::visit(
      [](const auto& o) -> const Iterate& {
        if constexpr (std::is_same_v<std::decay_t<decltype(o)>, Witness>) {
          return o.certificate.witness;
        } else {
          return o.iterate;
        }
      },
      outcome);
}

/// Distance reported by an outcome: delta, witness distance or projection
/// distance.
inline double outcome_distance(const SolveOutcome& outcome) {
  return std::visit(
      [](const auto& o) -> double {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Witness>) return o.certificate.distance;
        else if constexpr (std::is_same_v<T, Projection>) return o.distance;
        else return o.delta;
      },
      outcome);
}

enum class StepKind { Pivot, FrankWolfe, Away, Drop, Projected };

inline std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Pivot: return "pivot";
    case StepKind::FrankWolfe: return "fw";
    case StepKind::Away: return "away";
    case StepKind::Drop: return "drop";
    case StepKind::Projected: return "projected";
  }
  return "unknown";
}

/// One record per step taken.
struct TraceRecord {
  double delta = 0.0;  ///< |p_k - p| before the step
  double sin_theta = std::numeric_limits<double>::quiet_NaN();
  StepKind kind = StepKind::Pivot;
  double gamma = 0.0;
  double lambda = std::numeric_limits<double>::quiet_NaN();  ///< SPG only
  Index atom = -1;
};

struct SolveReport {
  SolveOutcome outcome;
  std::int64_t iterations = 0;
  double wall_time = 0.0;  ///< seconds
  std::vector<TraceRecord> trace;

  [[nodiscard]] OutcomeKind kind() const { return kind_of(outcome); }
  [[nodiscard]] double distance() const { return outcome_distance(outcome); }
  [[nodiscard]] const Iterate& iterate() const { return final_iterate(outcome); }
  /// True when the outcome proves p outside conv(A).
  [[nodiscard]] bool proves_outside() const {
    return kind() == OutcomeKind::Witness || kind() == OutcomeKind::Gap;
  }
  [[nodiscard]] const WitnessCertificate* certificate() const {
    const auto* w = std::get_if<Witness>(&outcome);
    return w ? &w->certificate : nullptr;
  }
};

}  // namespace chmp

#endif  // CHMP_OUTCOME_HPP
