#ifndef CHMP_INSTANCES_HPP
#define CHMP_INSTANCES_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "chmp/point_set.hpp"
#include "chmp/rng.hpp"

namespace chmp {

enum class InstanceCase { A, B, C, D, UnitSquareInside, UnitSquareOutside };

inline std::string_view to_string(InstanceCase c) {
  switch (c) {
    case InstanceCase::A: return "a";
    case InstanceCase::B: return "b";
    case InstanceCase::C: return "c";
    case InstanceCase::D: return "d";
    case InstanceCase::UnitSquareInside: return "square-inside";
    case InstanceCase::UnitSquareOutside: return "square-outside";
  }
  return "?";
}

inline InstanceCase parse_case(std::string_view name) {
  std::string lower(name);
  for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower == "a") return InstanceCase::A;
  if (lower == "b") return InstanceCase::B;
  if (lower == "c") return InstanceCase::C;
  if (lower == "d") return InstanceCase::D;
  if (lower == "square-inside" || lower == "unitsquare-inside" || lower == "inside") {
    return InstanceCase::UnitSquareInside;
  }
  if (lower == "square-outside" || lower == "unitsquare-outside" || lower == "outside") {
    return InstanceCase::UnitSquareOutside;
  }
  throw ConfigError("unknown instance case '" + std::string(name) + "'");
}

struct InstanceSpec {
  Index m = 2;
  Index n = 10;
  InstanceCase kind = InstanceCase::A;
  std::uint64_t seed = 0;
  double beta = 0.9;  ///< v_s shrink factor, cases b and d
  /// Midpoint dilation; 0 selects the case default (1.5 for c, 1.01 for d).
  double dilation = 0.0;

  [[nodiscard]] double effective_dilation() const {
    if (dilation != 0.0) return dilation;
    if (kind == InstanceCase::C) return 1.5;
    if (kind == InstanceCase::D) return 1.01;
    return 1.0;
  }

  void validate() const {
    const bool square =
        kind == InstanceCase::UnitSquareInside || kind == InstanceCase::UnitSquareOutside;
    if (!square && (m < 1 || n < 1)) throw ConfigError("instance needs m, n >= 1");
    if ((kind == InstanceCase::B || kind == InstanceCase::C || kind == InstanceCase::D) && n < 2) {
      throw ConfigError("cases b, c and d need at least two columns");
    }
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
    if ((kind == InstanceCase::C || kind == InstanceCase::D) && !(effective_dilation() > 1.0)) {
      throw ConfigError("dilation must exceed 1");
    }
  }
};

struct Instance {
  PointSet points;
  Vector p;
};

/// n points uniform in the unit ball of R^m: v = u^(1/m) vhat/|vhat| with
/// vhat standard normal and u uniform. Draw order per column: m normals, then u.
inline PointSet sample_unit_ball(Index m, Index n, Rng& rng) {
  if (m < 1 || n < 1) throw ConfigError("sample_unit_ball needs m, n >= 1");
  Matrix a(m, n);
  for (Index j = 0; j < n; ++j) {
    double norm = 0.0;
    do {
      for (Index i = 0; i < m; ++i) a(i, j) = rng.normal();
      norm = a.col(j).norm();
    } while (norm == 0.0);
    const double u = rng.uniform();
    a.col(j) *= std::pow(u, 1.0 / static_cast<double>(m)) / norm;
  }
  return PointSet(std::move(a));
}

inline Instance gen_case_a(Index m, Index n, Rng& rng) {
  return {sample_unit_ball(m, n, rng), Vector::Zero(m)};
}

namespace detail {

/// Indices of the two columns with the largest coordinate sum.
inline std::pair<Index, Index> top_two_by_sum(const Matrix& a) {
  const Vector sums = a.colwise().sum().transpose();
  Index first = 0;
  sums.maxCoeff(&first);
  Index second = first == 0 ? 1 : 0;
  for (Index j = 0; j < sums.size(); ++j) {
    if (j != first && sums[j] > sums[second]) second = j;
  }
  return {first, second};
}

/// Sample until the scaled midpoint of the top-two columns is nonzero.
/// Returns the raw columns plus (v_l, v_q, p).
struct MidpointDraw {
  Matrix a;
  Vector vl, vq, p;
};

inline MidpointDraw draw_midpoint(Index m, Index n, double dilation, Rng& rng) {
  for (;;) {
    MidpointDraw d;
    d.a = sample_unit_ball(m, n, rng).matrix();
    const auto [l, q] = top_two_by_sum(d.a);
    d.vl = d.a.col(l);
    d.vq = d.a.col(q);
    d.p = dilation * 0.5 * (d.vl + d.vq);
    if (d.p.norm() > 0.0) return d;
  }
}

inline Instance append_close_point(MidpointDraw d, double beta) {
  const double pn = d.p.norm();
  const Vector vs = d.p - (beta / 2.0) * ((d.vl - d.vq).norm() / pn) * d.p;
  Matrix a(d.a.rows(), d.a.cols() + 1);
  a << d.a, vs;
  return {PointSet(std::move(a)), std::move(d.p)};
}

}  // namespace detail

/// p is the midpoint of the two columns maximizing e'v, plus an appended
/// column v_s on the segment [0, p] at distance (beta/2)|v_l - v_q| from p.
inline Instance gen_case_b(Index m, Index n, Rng& rng, double beta = 0.9) {
  return detail::append_close_point(detail::draw_midpoint(m, n, 1.0, rng), beta);
}

/// p = dilation * midpoint, no extra column.
inline Instance gen_case_c(Index m, Index n, Rng& rng, double dilation = 1.5) {
  auto d = detail::draw_midpoint(m, n, dilation, rng);
  return {PointSet(std::move(d.a)), std::move(d.p)};
}

/// p = dilation * midpoint, then v_s as in case b computed from the dilated p.
inline Instance gen_case_d(Index m, Index n, Rng& rng, double beta = 0.9,
                           double dilation = 1.01) {
  return detail::append_close_point(detail::draw_midpoint(m, n, dilation, rng), beta);
}

enum class SquareVariant { Inside, Outside };

/// Unit-square vertices plus the centre shifted right by 0.1. Inside: p is
/// the midpoint of the right edge; Outside: p sits 0.05 beyond it.
inline Instance unit_square_instance(SquareVariant variant) {
  Matrix a(2, 5);
  a << 0.0, 1.0, 1.0, 0.0, 0.6,
       0.0, 0.0, 1.0, 1.0, 0.5;
  Vector p(2);
  p << (variant == SquareVariant::Inside ? 1.0 : 1.05), 0.5;
  return {PointSet(std::move(a)), std::move(p)};
}

inline Instance generate(const InstanceSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  switch (spec.kind) {
    case InstanceCase::A: return gen_case_a(spec.m, spec.n, rng);
    case InstanceCase::B: return gen_case_b(spec.m, spec.n, rng, spec.beta);
    case InstanceCase::C: return gen_case_c(spec.m, spec.n, rng, spec.effective_dilation());
    case InstanceCase::D:
      return gen_case_d(spec.m, spec.n, rng, spec.beta, spec.effective_dilation());
    case InstanceCase::UnitSquareInside: return unit_square_instance(SquareVariant::Inside);
    case InstanceCase::UnitSquareOutside: return unit_square_instance(SquareVariant::Outside);
  }
  throw ConfigError("unhandled instance case");
}

}  // namespace chmp

#endif  // CHMP_INSTANCES_HPP
