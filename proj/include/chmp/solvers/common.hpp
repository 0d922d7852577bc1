#ifndef CHMP_SOLVERS_COMMON_HPP
#define CHMP_SOLVERS_COMMON_HPP

#include <chrono>
#include <cstdint>
#include <utility>

#include "chmp/outcome.hpp"

namespace chmp::detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void check_inputs(const PointSet& points, const QueryContext& q,
                         const SolverConfig& cfg) {
  cfg.validate();
  if (points.empty()) throw InputError("empty point set");
  if (q.p.size() != points.dim() || q.dots.size() != points.size()) {
    throw InputError("query context was built for a different point set");
  }
}

inline SolveReport finish(SolveOutcome outcome, std::int64_t iterations,
                          const Stopwatch& clock, std::vector<TraceRecord> trace) {
  SolveReport report;
  report.outcome = std::move(outcome);
  report.iterations = iterations;
  report.wall_time = clock.seconds();
  report.trace = std::move(trace);
  return report;
}

inline void observe(const SolverConfig& cfg, std::int64_t k, const Iterate& it) {
  if (cfg.observer) cfg.observer(k, it);
}

}  // namespace chmp::detail

#endif  // CHMP_SOLVERS_COMMON_HPP
