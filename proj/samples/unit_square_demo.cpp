// Solve the unit-square instances with every solver and print the outcomes.

#include <cstdio>

#include "chmp/chmp.hpp"

int main() {
  using namespace chmp;
  for (SquareVariant variant : {SquareVariant::Inside, SquareVariant::Outside}) {
    const Instance inst = unit_square_instance(variant);
    const QueryContext q = build_query(inst.points, inst.p);
    std::printf("%s: p = (%.2f, %.2f), R = %.4f\n",
                variant == SquareVariant::Inside ? "inside" : "outside", inst.p[0], inst.p[1],
                q.radius);
    SolverConfig cfg;
    cfg.eps = 1e-3;
    for (SolverKind kind : kAllSolvers) {
      const SolveReport rep = solve(kind, inst.points, q, cfg);
      std::printf("  %-4s %-10s iterations %-7lld distance %.3e\n",
                  std::string(to_string(kind)).c_str(), std::string(to_string(rep.kind())).c_str(),
                  static_cast<long long>(rep.iterations), rep.distance());
      if (const auto* cert = rep.certificate()) {
        std::printf("       separating hyperplane %.4f x %+.4f y = %.4f\n", cert->normal[0],
                    cert->normal[1], cert->offset);
      }
    }
  }
}
