#ifndef CHMP_BENCH_HPP
#define CHMP_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "chmp/instances.hpp"
#include "chmp/solvers.hpp"

namespace chmp {

struct BenchConfig {
  InstanceCase kind = InstanceCase::A;
  Index m = 100;
  std::vector<Index> n_list{2000};
  int repetitions = 10;
  double eps = 1e-4;
  std::vector<SolverKind> solvers{SolverKind::TA, SolverKind::GT, SolverKind::ASFW,
                                  SolverKind::SPG};
  std::uint64_t seed_base = 0;
  std::optional<std::int64_t> maxit;  ///< unset: default_maxit(n)
  unsigned jobs = 1;

  void validate() const {
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (n_list.empty()) throw ConfigError("n list must be nonempty");
    if (solvers.empty()) throw ConfigError("solver list must be nonempty");
  }
};

struct BenchRow {
  InstanceCase kind = InstanceCase::A;
  Index m = 0;
  Index n = 0;
  SolverKind solver = SolverKind::TA;
  std::uint64_t seed = 0;
  std::int64_t iterations = 0;
  OutcomeKind outcome = OutcomeKind::Epsilon;
  double delta = 0.0;
  double time_s = 0.0;
};

/// Instance j of an n value uses seed seed_base + j, for generation and for
/// the solver alike. Timing covers the solve call only.
inline std::vector<BenchRow> run_bench(const BenchConfig& bc) {
  bc.validate();
  struct Task {
    Index n;
    int rep;
  };
  std::vector<Task> tasks;
  for (Index n : bc.n_list) {
    for (int r = 0; r < bc.repetitions; ++r) tasks.push_back({n, r});
  }
  std::vector<std::vector<BenchRow>> rows(tasks.size());

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&]() {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        InstanceSpec spec;
        spec.kind = bc.kind;
        spec.m = bc.m;
        spec.n = tasks[t].n;
        spec.seed = bc.seed_base + static_cast<std::uint64_t>(tasks[t].rep);
        const Instance inst = generate(spec);
        const QueryContext q = build_query(inst.points, inst.p);
        SolverConfig cfg;
        cfg.eps = bc.eps;
        cfg.maxit = bc.maxit;
        cfg.seed = spec.seed;
        for (SolverKind s : bc.solvers) {
          const SolveReport rep = solve(s, inst.points, q, cfg);
          rows[t].push_back({bc.kind, inst.points.dim(), inst.points.size(), s, spec.seed,
                             rep.iterations, rep.kind(), rep.distance(), rep.wall_time});
        }
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned j = 1; j < std::max(1u, bc.jobs); ++j) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (error) std::rethrow_exception(error);

  std::vector<BenchRow> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

inline void write_bench_header(std::ostream& out) {
  out << "case,m,n,solver,seed,iterations,outcome,delta,time_s\n";
}

inline void write_bench_row(std::ostream& out, const BenchRow& r) {
  char delta[32], time[32];
  std::snprintf(delta, sizeof delta, "%.10e", r.delta);
  std::snprintf(time, sizeof time, "%.6f", r.time_s);
  out << to_string(r.kind) << ',' << r.m << ',' << r.n << ',' << to_string(r.solver) << ','
      << r.seed << ',' << r.iterations << ',' << to_string(r.outcome) << ',' << delta << ','
      << time << '\n';
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  write_bench_header(out);
  for (const auto& r : rows) write_bench_row(out, r);
}

}  // namespace chmp

#endif  // CHMP_BENCH_HPP
