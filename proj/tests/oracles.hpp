// Reference computations written independently of the library code paths.
#ifndef CHMP_TESTS_ORACLES_HPP
#define CHMP_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Euclidean projection onto the unit simplex by trying every coordinate as
// the smallest member of the support: O(n^2), no sorting.
inline Vec simplex_projection(const Vec& y) {
  const auto n = y.size();
  Vec best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    double sum = 0.0;
    int count = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (y[j] >= y[i]) {
        sum += y[j];
        ++count;
      }
    }
    const double tau = (sum - 1.0) / count;
    Vec x = (y.array() - tau).max(0.0).matrix();
    // Feasible only if every support member stays positive after the shift.
    bool ok = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (y[j] >= y[i] && y[j] - tau < -1e-15) ok = false;
    }
    if (!ok) continue;
    const double d = (x - y).squaredNorm();
    if (std::abs(x.sum() - 1.0) < 1e-9 && d < best_dist) {
      best_dist = d;
      best = x;
    }
  }
  return best;
}

// KKT residual for x = P(y): x >= 0, sum x = 1, and a tau with
// x_i = y_i - tau on the support and y_i <= tau off it.
inline double kkt_violation(const Vec& y, const Vec& x) {
  double viol = std::abs(x.sum() - 1.0);
  viol = std::max(viol, std::max(0.0, -x.minCoeff()));
  double tau = 0.0;
  int support = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) {
      tau += y[i] - x[i];
      ++support;
    }
  }
  if (support == 0) return std::numeric_limits<double>::infinity();
  tau /= support;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) viol = std::max(viol, std::abs(y[i] - x[i] - tau));
    else viol = std::max(viol, std::max(0.0, y[i] - tau));
  }
  return viol;
}

inline double cross(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; returns hull vertices counter-clockwise.
inline std::vector<Vec> hull_2d(const Mat& a) {
  std::vector<Vec> pts;
  for (Eigen::Index j = 0; j < a.cols(); ++j) pts.push_back(a.col(j));
  std::sort(pts.begin(), pts.end(), [](const Vec& u, const Vec& v) {
    return u[0] < v[0] || (u[0] == v[0] && u[1] < v[1]);
  });
  if (pts.size() < 3) return pts;
  std::vector<Vec> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

// p in conv(A) for A in R^2: p on the left of (or on) every hull edge.
inline bool in_hull_2d(const Mat& a, const Vec& p, double tol = 0.0) {
  const auto h = hull_2d(a);
  if (h.size() < 3) return false;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (cross(h[i], h[(i + 1) % h.size()], p) < -tol) return false;
  }
  return true;
}

inline double segment_distance(const Vec& a, const Vec& b, const Vec& p) {
  const Vec ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

// Distance from p to conv(A) in R^2.
inline double hull_distance_2d(const Mat& a, const Vec& p) {
  if (in_hull_2d(a, p)) return 0.0;
  const auto h = hull_2d(a);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < h.size(); ++i) {
    best = std::min(best, segment_distance(h[i], h[(i + 1) % h.size()], p));
  }
  return best;
}

// Barycentric coordinates of p w.r.t. a triangle in R^2.
inline Vec barycentric(const Vec& a, const Vec& b, const Vec& c, const Vec& p) {
  const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
  Vec w(3);
  w[1] = ((p[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (p[1] - a[1])) / det;
  w[2] = ((b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1])) / det;
  w[0] = 1.0 - w[1] - w[2];
  return w;
}

// Kolmogorov-Smirnov statistic of samples against the uniform CDF on [0,1].
inline double ks_uniform(std::vector<double> s) {
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    d = std::max(d, std::max((i + 1) / n - s[i], s[i] - i / n));
  }
  return d;
}

}  // namespace oracle

#endif  // CHMP_TESTS_ORACLES_HPP
