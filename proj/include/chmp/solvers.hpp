#ifndef CHMP_SOLVERS_HPP
#define CHMP_SOLVERS_HPP

#include <array>
#include <cctype>
#include <string>
#include <string_view>

#include "chmp/solvers/frank_wolfe.hpp"
#include "chmp/solvers/spg.hpp"
#include "chmp/solvers/triangle.hpp"

namespace chmp {

enum class SolverKind { TA, GT, FW, ASFW, SPG, PROJ };

inline constexpr std::array<SolverKind, 6> kAllSolvers{
    SolverKind::TA, SolverKind::GT, SolverKind::FW,
    SolverKind::ASFW, SolverKind::SPG, SolverKind::PROJ};

inline std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::TA: return "TA";
    case SolverKind::GT: return "GT";
    case SolverKind::FW: return "FW";
    case SolverKind::ASFW: return "ASFW";
    case SolverKind::SPG: return "SPG";
    case SolverKind::PROJ: return "PROJ";
  }
  return "?";
}

/// Case-insensitive solver name lookup.
inline SolverKind parse_solver(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (SolverKind kind : kAllSolvers) {
    if (upper == to_string(kind)) return kind;
  }
  throw ConfigError("unknown solver '" + std::string(name) + "'");
}

inline SolveReport solve(SolverKind kind, const PointSet& points, const QueryContext& q,
                         const SolverConfig& cfg) {
  switch (kind) {
    case SolverKind::TA: return solve_ta(points, q, cfg);
    case SolverKind::GT: return solve_gt(points, q, cfg);
    case SolverKind::FW: return solve_fw(points, q, cfg);
    case SolverKind::ASFW: return solve_asfw(points, q, cfg);
    case SolverKind::SPG: return solve_spg(points, q, cfg, SpgMode::DualityStopping);
    case SolverKind::PROJ: return solve_spg(points, q, cfg, SpgMode::Proj);
  }
  throw ConfigError("unhandled solver kind");
}

inline SolveReport solve(SolverKind kind, const PointSet& points, const Vector& p,
                         const SolverConfig& cfg) {
  return solve(kind, points, build_query(points, p), cfg);
}

}  // namespace chmp

#endif  // CHMP_SOLVERS_HPP
