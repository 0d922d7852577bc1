#ifndef CHMP_POINT_SET_HPP
#define CHMP_POINT_SET_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "chmp/errors.hpp"

namespace chmp {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// The finite set A, stored column-wise as an m x n matrix, with cached
/// squared column norms.
class PointSet {
 public:
  PointSet() = default;

  explicit PointSet(Matrix columns) : columns_(std::move(columns)) {
    if (columns_.rows() < 1 || columns_.cols() < 1) {
      throw InputError("point set needs m >= 1 and n >= 1");
    }
    if (!columns_.allFinite()) {
      throw InputError("point set contains non-finite entries");
    }
    squared_norms_ = columns_.colwise().squaredNorm().transpose();
  }

  [[nodiscard]] Index dim() const noexcept { return columns_.rows(); }
  [[nodiscard]] Index size() const noexcept { return columns_.cols(); }
  [[nodiscard]] bool empty() const noexcept { return columns_.size() == 0; }

  [[nodiscard]] const Matrix& matrix() const noexcept { return columns_; }
  [[nodiscard]] auto column(Index i) const { return columns_.col(i); }
  [[nodiscard]] double squared_norm(Index i) const { return squared_norms_[i]; }
  [[nodiscard]] const Vector& squared_norms() const noexcept {
    return squared_norms_;
  }

 private:
  Matrix columns_;
  Vector squared_norms_;
};

/// Per-query caches shared by every solver: R = max_i |v_i - p|, v_i'p and
/// |p|^2, plus the column nearest to p (the common starting vertex).
struct QueryContext {
  Vector p;
  double radius = 0.0;
  Vector dots;
  double pnorm2 = 0.0;
  Index nearest = 0;
  double nearest_distance = 0.0;
};

inline QueryContext build_query(const PointSet& points, const Vector& p) {
  if (p.size() != points.dim()) {
    throw InputError("query has dimension " + std::to_string(p.size()) +
                     ", point set has " + std::to_string(points.dim()));
  }
  if (!p.allFinite()) throw InputError("query point has non-finite entries");

  QueryContext q;
  q.p = p;
  q.pnorm2 = p.squaredNorm();
  q.dots = points.matrix().transpose() * p;

  const Vector dist2 = (points.matrix().colwise() - p).colwise().squaredNorm();
  Index far = 0;
  q.radius = std::sqrt(dist2.maxCoeff(&far));
  q.nearest_distance = std::sqrt(dist2.minCoeff(&q.nearest));
  return q;
}

}  // namespace chmp

#endif  // CHMP_POINT_SET_HPP
