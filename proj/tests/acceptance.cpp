// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

#include "chmp/chmp.hpp"
#include "oracles.hpp"

using namespace chmp;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Instance make(InstanceCase kind, Index m, Index n, std::uint64_t seed) {
  InstanceSpec spec;
  spec.kind = kind;
  spec.m = m;
  spec.n = n;
  spec.seed = seed;
  return generate(spec);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

// ---------------------------------------------------------------------------

Verdict ac1_pivot_equivalence() {
  Verdict v;
  Rng rng(1);
  const double tau = 1e-12;
  int simple_bad = 0, strict_bad = 0, definition_bad = 0, skipped = 0;
  for (int t = 0; t < 10000; ++t) {
    const Index m = 2 + static_cast<Index>(rng.uniform_index(19));
    Vector a(m), pk(m), p(m);
    for (Index i = 0; i < m; ++i) {
      a[i] = rng.normal();
      pk[i] = rng.normal();
      p[i] = rng.normal();
    }
    const double scale = std::pow(a.norm() + pk.norm() + p.norm(), 2);
    const auto simple = pivot_condition_margins(a, pk, p);
    const auto strict = strict_pivot_condition_margins(a, pk, p);
    auto disagree = [&](const std::array<double, 4>& mg) {
      for (double x : mg) {
        if (std::abs(x) <= tau * scale) return false;
      }
      for (double x : mg) {
        if ((x <= 0.0) != (mg[0] <= 0.0)) return true;
      }
      return false;
    };
    simple_bad += disagree(simple);
    strict_bad += disagree(strict);
    // Definitions: d(v,p) <= d(v,p_k) and angle at p at least pi/2.
    const double def_simple = (a - p).norm() - (a - pk).norm();
    const double def_strict = (pk - p).dot(a - p);
    if (std::abs(def_simple) > tau * std::sqrt(scale) && std::abs(simple[0]) > tau * scale) {
      definition_bad += (def_simple <= 0.0) != (simple[1] <= 0.0);
    } else {
      ++skipped;
    }
    if (std::abs(def_strict) > tau * scale && std::abs(strict[1]) > tau * scale) {
      definition_bad += (def_strict <= 0.0) != (strict[1] <= 0.0);
    }
  }
  v.detail << "10000 triples, simple disagreements " << simple_bad << ", strict " << strict_bad
           << ", vs definitions " << definition_bad << ", near-zero skipped " << skipped;
  v.require(simple_bad == 0 && strict_bad == 0 && definition_bad == 0, "agreement");
  return v;
}

Verdict ac2_monotone() {
  Verdict v;
  std::vector<Instance> suite;
  for (InstanceCase kind : {InstanceCase::A, InstanceCase::B, InstanceCase::C, InstanceCase::D}) {
    for (Index n : {500, 2000}) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) suite.push_back(make(kind, 100, n, seed));
    }
  }
  suite.push_back(unit_square_instance(SquareVariant::Inside));
  suite.push_back(unit_square_instance(SquareVariant::Outside));
  std::int64_t steps = 0;
  int violations = 0;
  for (const Instance& inst : suite) {
    const QueryContext q = build_query(inst.points, inst.p);
    for (SolverKind s : {SolverKind::TA, SolverKind::GT, SolverKind::FW}) {
      SolverConfig cfg;
      cfg.trace = true;
      cfg.maxit = 20000;
      const SolveReport rep = solve(s, inst.points, q, cfg);
      steps += rep.iterations;
      for (std::size_t k = 1; k < rep.trace.size(); ++k) {
        violations += !(rep.trace[k].delta < rep.trace[k - 1].delta);
      }
      if (!rep.trace.empty()) {
        const double final_delta = (rep.iterate().point() - inst.p).norm();
        violations += !(final_delta < rep.trace.back().delta);
      }
    }
  }
  v.detail << suite.size() << " instances x {TA,GT,FW}, " << steps << " steps, " << violations
           << " non-decreasing steps";
  v.require(violations == 0, "strict decrease");
  return v;
}

Verdict ac3_complexity_bound() {
  Verdict v;
  const double eps = 0.05;
  const double bound = 48.0 / (eps * eps);
  Rng rng(3);
  double worst = 0.0;
  int not_eps = 0;
  for (int t = 0; t < 100; ++t) {
    const Index n = 4 + static_cast<Index>(rng.uniform_index(7));
    const PointSet ps = sample_unit_ball(3, n, rng);
    Vector w(n);
    for (Index j = 0; j < n; ++j) w[j] = 0.1 + rng.uniform();
    w /= w.sum();
    const Vector p = ps.matrix() * w;
    SolverConfig cfg;
    cfg.eps = eps;
    cfg.seed = static_cast<std::uint64_t>(t);
    const SolveReport rep = solve_ta(ps, build_query(ps, p), cfg);
    not_eps += rep.kind() != OutcomeKind::Epsilon;
    worst = std::max(worst, static_cast<double>(rep.iterations));
  }
  v.detail << "100 interior R^3 instances, max TA iterations " << worst << " (bound " << bound << ")";
  v.require(not_eps == 0, "all eps-solutions");
  v.require(worst <= bound, "iteration bound");
  return v;
}

Verdict ac4_factor_two() {
  Verdict v;
  // Relative slack for the comparison against the projection oracle.
  const double tol = 1e-12;
  struct Case {
    Instance inst;
    std::uint64_t seed;
  };
  std::vector<Case> cases;
  for (std::uint64_t s = 0; s < 20; ++s) cases.push_back({make(InstanceCase::C, 100, 500, s), s});
  for (std::uint64_t s = 0; s < 20; ++s) cases.push_back({make(InstanceCase::D, 100, 500, s), s});
  for (std::uint64_t s = 0; s < 10; ++s) cases.push_back({unit_square_instance(SquareVariant::Outside), s});
  int witnesses = 0, violations = 0, without = 0, strict_violations = 0;
  double worst_low = 0.0, worst_high = 0.0;
  for (const Case& c : cases) {
    const QueryContext q = build_query(c.inst.points, c.inst.p);
    SolverConfig proj_cfg;
    proj_cfg.proj_eps = 1e-9;
    const double delta = solve_spg(c.inst.points, q, proj_cfg, SpgMode::Proj).distance();
    int found = 0;
    for (SolverKind s : {SolverKind::TA, SolverKind::GT, SolverKind::FW, SolverKind::ASFW, SolverKind::SPG}) {
      SolverConfig cfg;
      cfg.seed = c.seed;
      const SolveReport rep = solve(s, c.inst.points, q, cfg);
      if (rep.kind() != OutcomeKind::Witness) continue;
      ++found;
      const double d = rep.distance();
      worst_low = std::max(worst_low, 0.5 * d / delta);
      worst_high = std::max(worst_high, delta / d);
      if (0.5 * d > delta * (1 + tol) || delta > d * (1 + tol)) ++violations;
      if (0.5 * d > delta || delta > d) ++strict_violations;
    }
    witnesses += found;
    without += found == 0;
  }
  v.detail << "50 outside instances, " << witnesses << " witnesses, max d/(2 Delta) " << worst_low
           << ", max Delta/d - 1 " << worst_high - 1.0 << " (rel. tol " << tol << ", "
           << strict_violations << " outside the unslackened sandwich)";
  v.require(violations == 0, "sandwich");
  v.require(without == 0, "every instance yields a witness");
  return v;
}

Verdict ac5_fw_equals_gt() {
  Verdict v;
  const Index dims[] = {10, 20, 50, 30, 50};
  const Index sizes[] = {100, 500, 2000, 1000, 200};
  double worst = 0.0;
  std::int64_t compared = 0;
  int fw_longer = 0;
  for (InstanceCase kind : {InstanceCase::A, InstanceCase::B, InstanceCase::C, InstanceCase::D}) {
    for (int i = 0; i < 5; ++i) {
      const Instance inst = make(kind, dims[i], sizes[i], static_cast<std::uint64_t>(i));
      const QueryContext q = build_query(inst.points, inst.p);
      SolverConfig cfg;
      cfg.pivot_policy = PivotPolicy::Greedy;
      cfg.maxit = kind == InstanceCase::B ? 2000 : 20000;
      std::vector<Vector> gt;
      cfg.observer = [&](std::int64_t, const Iterate& it) { gt.push_back(it.weights()); };
      solve_gt(inst.points, q, cfg);
      std::size_t k = 0;
      cfg.observer = [&](std::int64_t, const Iterate& it) {
        if (k < gt.size()) {
          worst = std::max(worst, (it.weights() - gt[k]).cwiseAbs().maxCoeff());
          ++compared;
        } else {
          ++fw_longer;
        }
        ++k;
      };
      solve_fw(inst.points, q, cfg);
    }
  }
  v.detail << "20 instances, " << compared << " iterates compared, max weight difference " << worst;
  v.require(worst <= 1e-12, "weights within 1e-12");
  v.require(fw_longer == 0, "FW never outruns GT");
  return v;
}

struct SuiteStats {
  std::map<SolverKind, std::vector<double>> iterations;
  std::map<SolverKind, std::vector<OutcomeKind>> outcomes;
};

SuiteStats run_suite(InstanceCase kind, Index m, Index n, int seeds, const std::vector<SolverKind>& solvers,
                     std::optional<std::int64_t> triangle_cap = std::nullopt) {
  SuiteStats st;
  for (int s = 0; s < seeds; ++s) {
    const Instance inst = make(kind, m, n, static_cast<std::uint64_t>(s));
    const QueryContext q = build_query(inst.points, inst.p);
    for (SolverKind k : solvers) {
      SolverConfig cfg;
      cfg.seed = static_cast<std::uint64_t>(s);
      if (triangle_cap && (k == SolverKind::TA || k == SolverKind::GT)) cfg.maxit = triangle_cap;
      const SolveReport rep = solve(k, inst.points, q, cfg);
      st.iterations[k].push_back(static_cast<double>(rep.iterations));
      st.outcomes[k].push_back(rep.kind());
    }
  }
  return st;
}

Verdict ac6_case_a_trend() {
  Verdict v;
  auto st = run_suite(InstanceCase::A, 100, 2000, 10,
                      {SolverKind::TA, SolverKind::GT, SolverKind::ASFW, SolverKind::SPG});
  const double ta = mean(st.iterations[SolverKind::TA]), gt = mean(st.iterations[SolverKind::GT]);
  const double asfw = mean(st.iterations[SolverKind::ASFW]), spg = mean(st.iterations[SolverKind::SPG]);
  v.detail << "means TA " << ta << ", GT " << gt << ", ASFW " << asfw << ", SPG " << spg;
  v.require(ta >= 700 && ta <= 2800, "TA band");
  v.require(gt >= 80 && gt <= 400, "GT band");
  v.require(asfw >= 80 && asfw <= 400, "ASFW band");
  v.require(spg <= 40, "SPG bound");
  const double ratio = gt / asfw;
  v.require(spg < std::min(gt, asfw) && std::max(gt, asfw) < ta && ratio >= 0.67 && ratio <= 1.5,
            "ordering SPG < GT ~ ASFW < TA");
  for (auto& [k, outs] : st.outcomes) {
    for (OutcomeKind o : outs) v.require(o == OutcomeKind::Epsilon, std::string(to_string(k)) + " eps-solution");
  }
  return v;
}

Verdict ac7_case_c() {
  Verdict v;
  auto st = run_suite(InstanceCase::C, 100, 2000, 10,
                      {SolverKind::TA, SolverKind::GT, SolverKind::ASFW, SolverKind::SPG});
  auto ones = [&](SolverKind k) {
    int c = 0;
    for (std::size_t i = 0; i < st.iterations[k].size(); ++i) {
      c += st.iterations[k][i] == 1.0 && st.outcomes[k][i] == OutcomeKind::Witness;
    }
    return c;
  };
  const int gt1 = ones(SolverKind::GT), asfw1 = ones(SolverKind::ASFW);
  const double ta = max_of(st.iterations[SolverKind::TA]), spg = max_of(st.iterations[SolverKind::SPG]);
  v.detail << "GT 1-step witnesses " << gt1 << "/10, ASFW " << asfw1 << "/10, max TA " << ta
           << ", max SPG " << spg;
  v.require(gt1 >= 9 && asfw1 >= 9, "one-step witnesses");
  v.require(ta <= 10, "TA bound");
  v.require(spg <= 5, "SPG bound");
  return v;
}

Verdict ac8_case_b() {
  Verdict v;
  const std::int64_t cap = 20000;
  auto st = run_suite(InstanceCase::B, 100, 2000, 5,
                      {SolverKind::TA, SolverKind::GT, SolverKind::ASFW, SolverKind::SPG}, cap);
  int stuck = 0;
  for (SolverKind k : {SolverKind::TA, SolverKind::GT}) {
    for (std::size_t i = 0; i < st.outcomes[k].size(); ++i) {
      stuck += st.outcomes[k][i] == OutcomeKind::Exhausted && st.iterations[k][i] >= 10000;
    }
  }
  const double asfw = max_of(st.iterations[SolverKind::ASFW]), spg = max_of(st.iterations[SolverKind::SPG]);
  v.detail << "TA/GT unterminated at cap " << cap << ": " << stuck << "/10 runs, max ASFW " << asfw
           << ", max SPG " << spg;
  v.require(stuck == 10, "TA and GT exceed 1e4 iterations");
  v.require(asfw <= 50, "ASFW bound");
  v.require(spg <= 40, "SPG bound");
  for (SolverKind k : {SolverKind::ASFW, SolverKind::SPG}) {
    for (OutcomeKind o : st.outcomes[k]) v.require(o == OutcomeKind::Epsilon, std::string(to_string(k)) + " eps-solution");
  }
  return v;
}

Verdict ac9_case_d() {
  Verdict v;
  auto st = run_suite(InstanceCase::D, 100, 1000, 10,
                      {SolverKind::TA, SolverKind::ASFW, SolverKind::SPG});
  const double ta = mean(st.iterations[SolverKind::TA]);
  const double asfw = max_of(st.iterations[SolverKind::ASFW]), spg = max_of(st.iterations[SolverKind::SPG]);
  v.detail << "TA mean " << ta << ", max ASFW " << asfw << ", max SPG " << spg;
  v.require(ta >= 2000 && ta <= 20000, "TA band");
  v.require(asfw <= 30, "ASFW bound");
  v.require(spg <= 20, "SPG bound");
  return v;
}

Verdict ac10_lp() {
  Verdict v;
  std::map<SolverKind, std::vector<double>> feas_it, infeas_it;
  int feas_ok = 0, infeas_ok = 0, runs = 0;
  for (SolverKind s : {SolverKind::GT, SolverKind::ASFW, SolverKind::SPG}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      for (bool feasible : {true, false}) {
        Rng rng(1000 + seed);
        const LpInstance lp = gen_lp_instance(50, 200, feasible, 1200.0, rng);
        const FeasibilityVerdict fv = solve_feasibility(lp, s, lp_solver_config());
        ++runs;
        if (feasible) {
          feas_it[s].push_back(static_cast<double>(fv.report.iterations));
          if (const auto* f = std::get_if<Feasible>(&fv.verdict)) {
            feas_ok += f->solution.within_bounds(fv.eps_r) && f->solution.x.minCoeff() >= 0.0;
          }
        } else {
          infeas_it[s].push_back(static_cast<double>(fv.report.iterations));
          if (const auto* i = std::get_if<Infeasible>(&fv.verdict)) {
            const Instance inst = build_chmp(lp);
            WitnessCertificate cert = i->certificate;
            infeas_ok += verify_certificate(inst.points, build_query(inst.points, inst.p), cert);
          }
        }
      }
    }
  }
  const double gt = mean(infeas_it[SolverKind::GT]);
  v.detail << "feasible verified " << feas_ok << "/30, infeasible certified " << infeas_ok
           << "/30; mean iterations feasible GT " << mean(feas_it[SolverKind::GT]) << " ASFW "
           << mean(feas_it[SolverKind::ASFW]) << " SPG " << mean(feas_it[SolverKind::SPG])
           << "; infeasible GT " << gt << " ASFW " << mean(infeas_it[SolverKind::ASFW]) << " SPG "
           << mean(infeas_it[SolverKind::SPG]);
  v.require(feas_ok == 30, "feasible verdicts");
  v.require(infeas_ok == 30, "infeasible certificates");
  v.require(gt <= 200, "GT infeasible mean");
  return v;
}

Verdict ac11_simplex() {
  Verdict v;
  Rng rng(11);
  double worst_dev = 0.0, worst_kkt = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const Index n = 1 + static_cast<Index>(rng.uniform_index(8));
    Vector y(n);
    for (Index i = 0; i < n; ++i) y[i] = 3.0 * rng.normal();
    const Vector x = simplex_project(y);
    worst_kkt = std::max(worst_kkt, oracle::kkt_violation(y, x));
    worst_dev = std::max(worst_dev, (x - oracle::simplex_projection(y)).cwiseAbs().maxCoeff());
  }
  v.detail << "10000 vectors, max deviation " << worst_dev << ", max KKT violation " << worst_kkt;
  v.require(worst_dev <= 1e-10, "brute-force agreement");
  v.require(worst_kkt <= 1e-10, "KKT");
  return v;
}

LabeledSamples blobs(int per_class, std::uint64_t seed) {
  Rng rng(seed);
  LabeledSamples s;
  s.images.resize(2, 2 * per_class);
  for (int j = 0; j < 2 * per_class; ++j) {
    const int label = j % 2;
    s.images(0, j) = rng.normal() + (label == 1 ? 10.0 : 0.0);
    s.images(1, j) = rng.normal();
    s.labels.push_back(label);
  }
  return s;
}

Verdict ac12_classifier() {
  Verdict v;
  const LabeledPointSet blob_train = group_by_label(blobs(100, 1));
  const LabeledSamples blob_test = blobs(50, 2);
  const SolverConfig cfg = classifier_config();
  const double blob_ta = accuracy_report(blob_train, blob_test, SolverKind::TA, cfg).accuracy;
  const double blob_proj = accuracy_report(blob_train, blob_test, SolverKind::PROJ, cfg).accuracy;
  v.detail << "blobs TA " << blob_ta << ", PROJ " << blob_proj;
  v.require(blob_ta == 1.0 && blob_proj == 1.0, "blob accuracy");

  std::string dataset, train_img, train_lab, test_img, test_lab;
  std::optional<std::size_t> per_class;
  if (const char* dir = std::getenv("CHMP_MNIST_DIR")) {
    const std::filesystem::path d(dir);
    dataset = "MNIST subset";
    train_img = (d / "train-images-idx3-ubyte").string();
    train_lab = (d / "train-labels-idx1-ubyte").string();
    test_img = (d / "t10k-images-idx3-ubyte").string();
    test_lab = (d / "t10k-labels-idx1-ubyte").string();
    per_class = 1000;
  } else {
    const std::filesystem::path d(CHMP_TEST_DATA_DIR);
    dataset = "8x8 digits fixture";
    train_img = (d / "digits-train-images.idx").string();
    train_lab = (d / "digits-train-labels.idx").string();
    test_img = (d / "digits-test-images.idx").string();
    test_lab = (d / "digits-test-labels.idx").string();
  }
  const LabeledPointSet train = group_by_label(read_idx(train_img, train_lab), per_class);
  const LabeledSamples test = read_idx(test_img, test_lab, 200);
  const AccuracyReport ta = accuracy_report(train, test, SolverKind::TA, cfg);
  const AccuracyReport proj = accuracy_report(train, test, SolverKind::PROJ, cfg);
  int outside = 0;
  for (const auto& r : proj.records) {
    bool all_out = true;
    for (const auto& [label, est] : r.result.estimates) all_out &= est.value > 0.0;
    outside += all_out;
  }
  const double gap = 100.0 * std::abs(ta.accuracy - proj.accuracy);
  v.detail << "; " << dataset << " (" << test.size() << " test points): TA " << 100.0 * ta.accuracy
           << "%, SPG-Proj " << 100.0 * proj.accuracy << "%, gap " << gap << " points, "
           << outside << " test points outside every class hull";
  v.require(gap <= 3.0, "accuracy gap");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"pivot condition equivalence", ac1_pivot_equivalence},
      {"monotone distance decrease", ac2_monotone},
      {"TA iteration bound 48/eps^2", ac3_complexity_bound},
      {"factor-of-two witness distance", ac4_factor_two},
      {"FW equals GT", ac5_fw_equals_gt},
      {"case (a) iteration trend", ac6_case_a_trend},
      {"case (c) one-step witnesses", ac7_case_c},
      {"case (b) hardness", ac8_case_b},
      {"case (d) iterations", ac9_case_d},
      {"LP feasibility", ac10_lp},
      {"simplex projection oracle", ac11_simplex},
      {"classifier", ac12_classifier},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    std::printf("%s AC%zu %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), v.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
