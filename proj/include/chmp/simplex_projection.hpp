#ifndef CHMP_SIMPLEX_PROJECTION_HPP
#define CHMP_SIMPLEX_PROJECTION_HPP

#include <algorithm>
#include <functional>
#include <vector>

#include "chmp/point_set.hpp"

namespace chmp {

/// Threshold tau of the Euclidean projection onto the unit simplex:
/// P(y)_i = max(y_i - tau, 0). Sort-based, O(n log n).
inline double simplex_threshold(const Vector& y) {
  if (y.size() == 0) throw InputError("cannot project an empty vector");
  if (!y.allFinite()) throw InputError("simplex projection needs finite entries");
  std::vector<double> sorted(y.data(), y.data() + y.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) {
      tau = candidate;
    } else {
      break;
    }
  }
  return tau;
}

inline Vector simplex_project(const Vector& y) {
  const double tau = simplex_threshold(y);
  return (y.array() - tau).max(0.0).matrix();
}

}  // namespace chmp

#endif  // CHMP_SIMPLEX_PROJECTION_HPP
