#ifndef CHMP_ITERATE_HPP
#define CHMP_ITERATE_HPP

#include <algorithm>
#include <vector>

#include "chmp/point_set.hpp"

namespace chmp {

/// A point of conv(A) carried as explicit convex-combination weights.
///
/// Invariants: weights >= 0, sum(weights) == 1 up to round-off, `support`
/// lists exactly the indices with a positive weight, and `point` tracks
/// A * weights (incrementally updated; `refresh_point` recomputes it).
class Iterate {
 public:
  Iterate() = default;

  static Iterate vertex(const PointSet& points, Index i) {
    if (i < 0 || i >= points.size()) throw InputError("vertex index out of range");
    Iterate it;
    it.weights_ = Vector::Zero(points.size());
    it.weights_[i] = 1.0;
    it.point_ = points.column(i);
    it.support_ = {i};
    return it;
  }

  static Iterate from_weights(const PointSet& points, Vector weights) {
    if (weights.size() != points.size()) {
      throw InputError("weight vector length does not match point count");
    }
    if (!weights.allFinite() || (weights.array() < 0.0).any()) {
      throw InputError("weights must be finite and nonnegative");
    }
    Iterate it;
    it.weights_ = std::move(weights);
    it.rebuild_support();
    it.refresh_point(points);
    return it;
  }

  [[nodiscard]] const Vector& weights() const noexcept { return weights_; }
  [[nodiscard]] const Vector& point() const noexcept { return point_; }
  [[nodiscard]] const std::vector<Index>& support() const noexcept {
    return support_;
  }
  [[nodiscard]] double weight(Index i) const { return weights_[i]; }
  [[nodiscard]] double weight_sum() const { return weights_.sum(); }

  void refresh_point(const PointSet& points) {
    point_ = Vector::Zero(points.dim());
    for (Index i : support_) point_.noalias() += weights_[i] * points.column(i);
  }

  /// alpha <- (1 - gamma) alpha + gamma e_j, point moved along v_j - point.
  void step_toward(const PointSet& points, Index j, double gamma) {
    if (gamma >= 1.0) {
      for (Index i : support_) weights_[i] = 0.0;
      weights_[j] = 1.0;
      support_ = {j};
      point_ = points.column(j);
      return;
    }
    const double keep = 1.0 - gamma;
    const bool fresh = weights_[j] == 0.0;
    for (Index i : support_) weights_[i] *= keep;
    weights_[j] += gamma;
    point_ = keep * point_ + gamma * points.column(j);
    if (fresh) support_.push_back(j);
    drop_underflow();
  }

  /// Away step: alpha <- (1 + gamma) alpha - gamma e_w. With `drop` set the
  /// weight of w is zeroed exactly and w leaves the support.
  void step_away(const PointSet& points, Index w, double gamma, bool drop) {
    const double grow = 1.0 + gamma;
    for (Index i : support_) weights_[i] *= grow;
    weights_[w] -= gamma;
    point_ = grow * point_ - gamma * points.column(w);
    if (drop) {
      weights_[w] = 0.0;
      std::erase(support_, w);
    }
    drop_underflow();
  }

  /// Zero weights below `threshold`, rescale the rest to sum to one and
  /// recompute the point. Returns the number of atoms removed.
  Index prune(const PointSet& points, double threshold) {
    Index removed = 0;
    double total = 0.0;
    for (Index i : support_) {
      if (weights_[i] < threshold) {
        weights_[i] = 0.0;
        ++removed;
      } else {
        total += weights_[i];
      }
    }
    if (removed > 0) rebuild_support();
    for (Index i : support_) weights_[i] /= total;
    refresh_point(points);
    return removed;
  }

  /// Overwrite weights and point wholesale (projected-gradient updates).
  void assign(Vector weights, Vector point) {
    weights_ = std::move(weights);
    point_ = std::move(point);
    rebuild_support();
  }

 private:
  void rebuild_support() {
    support_.clear();
    for (Index i = 0; i < weights_.size(); ++i) {
      if (weights_[i] > 0.0) support_.push_back(i);
    }
  }

  void drop_underflow() {
    std::erase_if(support_, [this](Index i) {
      if (weights_[i] > 0.0) return false;
      weights_[i] = 0.0;
      return true;
    });
  }

  Vector weights_;
  Vector point_;
  std::vector<Index> support_;
};

}  // namespace chmp

#endif  // CHMP_ITERATE_HPP
