#ifndef CHMP_CLASSIFIER_HPP
#define CHMP_CLASSIFIER_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>
#include <vector>

#include "chmp/idx.hpp"
#include "chmp/solvers.hpp"

namespace chmp {

/// One point set per label; all classes share the ambient dimension.
class LabeledPointSet {
 public:
  LabeledPointSet() = default;

  explicit LabeledPointSet(std::map<int, PointSet> classes) : classes_(std::move(classes)) {
    if (classes_.empty()) throw InputError("labeled point set has no classes");
    const Index m = classes_.begin()->second.dim();
    for (const auto& [label, set] : classes_) {
      if (set.empty()) throw InputError("class " + std::to_string(label) + " is empty");
      if (set.dim() != m) throw InputError("classes disagree on dimension");
    }
  }

  [[nodiscard]] const std::map<int, PointSet>& classes() const { return classes_; }
  [[nodiscard]] Index dim() const { return classes_.begin()->second.dim(); }
  [[nodiscard]] std::vector<int> labels() const {
    std::vector<int> out;
    for (const auto& [label, set] : classes_) out.push_back(label);
    return out;
  }

 private:
  std::map<int, PointSet> classes_;
};

/// Group columns by label. `per_class` keeps at most that many of each.
inline LabeledPointSet group_by_label(const LabeledSamples& samples,
                                      std::optional<std::size_t> per_class = std::nullopt) {
  std::map<int, std::vector<Index>> members;
  for (Index j = 0; j < samples.size(); ++j) {
    auto& bucket = members[samples.labels[static_cast<std::size_t>(j)]];
    if (!per_class || bucket.size() < *per_class) bucket.push_back(j);
  }
  std::map<int, PointSet> classes;
  for (const auto& [label, idx] : members) {
    Matrix a(samples.dim(), static_cast<Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) a.col(static_cast<Index>(k)) = samples.images.col(idx[k]);
    classes.emplace(label, PointSet(std::move(a)));
  }
  return LabeledPointSet(std::move(classes));
}

inline LabeledPointSet load_idx(const std::string& images_path, const std::string& labels_path,
                                std::optional<std::size_t> limit = std::nullopt) {
  return group_by_label(read_idx(images_path, labels_path, limit));
}

enum class DistanceKind {
  WitnessDist,  ///< |p' - p|, within a factor two of the true distance
  InsideBound,  ///< eps-solution; the distance is at most delta <= eps R
  Exact,        ///< projection mode
  GapBound,     ///< relative-error certificate; delta of the final iterate
  Unresolved,   ///< iteration cap; delta of the final iterate
};

inline std::string_view to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::WitnessDist: return "witness";
    case DistanceKind::InsideBound: return "inside";
    case DistanceKind::Exact: return "exact";
    case DistanceKind::GapBound: return "gap";
    case DistanceKind::Unresolved: return "unresolved";
  }
  return "?";
}

struct DistanceEstimate {
  double value = 0.0;
  DistanceKind kind = DistanceKind::WitnessDist;
  std::int64_t iterations = 0;
};

/// Classification solves use SPG memory M = 3.
inline SolverConfig classifier_config(double eps = 1e-4) {
  SolverConfig cfg;
  cfg.eps = eps;
  cfg.spg.memory = 3;
  return cfg;
}

inline DistanceEstimate witness_distance(const Vector& p, const PointSet& class_set,
                                         SolverKind solver, const SolverConfig& cfg) {
  const SolveReport report = solve(solver, class_set, p, cfg);
  DistanceEstimate est;
  est.iterations = report.iterations;
  est.value = report.distance();
  switch (report.kind()) {
    case OutcomeKind::Witness: est.kind = DistanceKind::WitnessDist; break;
    case OutcomeKind::Epsilon: est.kind = DistanceKind::InsideBound; break;
    case OutcomeKind::Projection: est.kind = DistanceKind::Exact; break;
    case OutcomeKind::Gap: est.kind = DistanceKind::GapBound; break;
    case OutcomeKind::Exhausted: est.kind = DistanceKind::Unresolved; break;
  }
  return est;
}

struct Classification {
  int label = 0;
  std::map<int, DistanceEstimate> estimates;
};

/// Smallest estimate wins; ties go to the lowest label.
inline Classification classify(const Vector& p, const LabeledPointSet& labeled,
                               SolverKind solver, const SolverConfig& cfg) {
  Classification out;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [label, set] : labeled.classes()) {
    const DistanceEstimate est = witness_distance(p, set, solver, cfg);
    if (est.value < best) {
      best = est.value;
      out.label = label;
    }
    out.estimates.emplace(label, est);
  }
  return out;
}

struct TestRecord {
  Index test_id = 0;
  int true_label = 0;
  Classification result;
  double wall_time_ms = 0.0;
};

struct AccuracyReport {
  std::vector<int> labels;
  /// confusion[true][predicted] counts, indexed by position in `labels`.
  std::vector<std::vector<Index>> confusion;
  std::vector<TestRecord> records;
  double accuracy = 0.0;
  double wall_time = 0.0;  ///< seconds, all test points

  /// test_id,true_label,predicted_label,dist_<label>...,wall_time_ms
  void write_csv(std::ostream& out) const {
    out << "test_id,true_label,predicted_label";
    for (int label : labels) out << ",dist_" << label;
    out << ",wall_time_ms\n";
    for (const auto& r : records) {
      out << r.test_id << ',' << r.true_label << ',' << r.result.label;
      for (int label : labels) out << ',' << r.result.estimates.at(label).value;
      out << ',' << r.wall_time_ms << '\n';
    }
  }

  /// One row per class (label,correct,total) plus a total line.
  void write_summary_csv(std::ostream& out) const {
    out << "label,correct,total,accuracy\n";
    Index all_correct = 0, all_total = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      Index total = 0;
      for (Index c : confusion[i]) total += c;
      const Index correct = confusion[i][i];
      all_correct += correct;
      all_total += total;
      out << labels[i] << ',' << correct << ',' << total << ','
          << (total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 0.0) << '\n';
    }
    out << "total," << all_correct << ',' << all_total << ',' << accuracy << '\n';
  }
};

/// Classify every test column. Test points are spread over `jobs` threads;
/// results are stored by test index so the report does not depend on scheduling.
inline AccuracyReport accuracy_report(const LabeledPointSet& train, const LabeledSamples& test,
                                      SolverKind solver, const SolverConfig& cfg,
                                      unsigned jobs = 1) {
  if (test.dim() != train.dim()) throw InputError("train and test dimensions differ");
  const detail::Stopwatch clock;
  AccuracyReport report;
  report.labels = train.labels();
  for (int label : test.labels) {
    if (std::find(report.labels.begin(), report.labels.end(), label) == report.labels.end()) {
      report.labels.push_back(label);
    }
  }
  std::sort(report.labels.begin(), report.labels.end());
  report.records.resize(static_cast<std::size_t>(test.size()));

  std::atomic<Index> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&]() {
    for (Index j = next++; j < test.size(); j = next++) {
      try {
        const detail::Stopwatch one;
        TestRecord& r = report.records[static_cast<std::size_t>(j)];
        r.test_id = j;
        r.true_label = test.labels[static_cast<std::size_t>(j)];
        r.result = classify(test.images.col(j), train, solver, cfg);
        r.wall_time_ms = 1e3 * one.seconds();
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, jobs);
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (error) std::rethrow_exception(error);

  const auto position = [&](int label) {
    return static_cast<std::size_t>(
        std::find(report.labels.begin(), report.labels.end(), label) - report.labels.begin());
  };
  report.confusion.assign(report.labels.size(), std::vector<Index>(report.labels.size(), 0));
  Index correct = 0;
  for (const auto& r : report.records) {
    ++report.confusion[position(r.true_label)][position(r.result.label)];
    if (r.true_label == r.result.label) ++correct;
  }
  report.accuracy = test.size() > 0 ? static_cast<double>(correct) / static_cast<double>(test.size()) : 0.0;
  report.wall_time = clock.seconds();
  return report;
}

}  // namespace chmp

#endif  // CHMP_CLASSIFIER_HPP
