// chmp: generate, solve and benchmark convex hull membership instances.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include "chmp/chmp.hpp"

namespace {

using namespace chmp;

struct Globals {
  std::uint64_t seed = 0;
  double eps = 1e-4;
  std::int64_t maxit = 0;  // 0: default formula
  bool trace = false;
  unsigned jobs = 1;
  std::string out;
};

double default_eps() {
  if (const char* env = std::getenv("CHMP_DEFAULT_EPS")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && v < 1.0) return v;
    throw ConfigError("CHMP_DEFAULT_EPS must be a number in (0, 1)");
  }
  return 1e-4;
}

SolverConfig make_config(const Globals& g) {
  SolverConfig cfg;
  cfg.eps = g.eps;
  cfg.seed = g.seed;
  cfg.trace = g.trace;
  if (g.maxit > 0) cfg.maxit = g.maxit;
  cfg.validate();
  return cfg;
}

// Output sink: the --out file when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw FormatError("cannot write '" + path + "'");
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int exit_code(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Epsilon:
    case OutcomeKind::Projection: return 0;
    case OutcomeKind::Witness:
    case OutcomeKind::Gap: return 2;
    case OutcomeKind::Exhausted: return 3;
  }
  return 1;
}

void print_trace(std::ostream& out, const SolveReport& rep) {
  out << "k,delta,sin_theta,kind,gamma,lambda,atom\n";
  for (std::size_t k = 0; k < rep.trace.size(); ++k) {
    const auto& t = rep.trace[k];
    out << k << ',' << t.delta << ',' << t.sin_theta << ',' << to_string(t.kind) << ','
        << t.gamma << ',' << t.lambda << ',' << t.atom << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex hull membership solvers and benchmarks"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  try {
    g.eps = default_eps();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  app.add_option("--seed", g.seed, "RNG seed (bench: seed base)");
  auto* eps_opt = app.add_option("--eps", g.eps, "relative tolerance, applied as eps*R")->check(CLI::Range(0.0, 1.0));
  app.add_option("--maxit", g.maxit, "iteration cap (default min(max(1000n,10000),1e6))");
  app.add_flag("--trace", g.trace, "record per-iteration trace");
  app.add_option("--jobs", g.jobs, "worker threads for independent solves")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output file (default stdout)");

  // gen
  auto* gen = app.add_subcommand("gen", "write a seeded instance file");
  std::string gen_case = "a";
  Index gen_m = 2, gen_n = 10;
  std::string gen_lp;
  double gen_bound = 1200.0;
  gen->add_option("--case", gen_case, "a, b, c, d, square-inside, square-outside");
  gen->add_option("-m", gen_m, "dimension")->check(CLI::PositiveNumber);
  gen->add_option("-n", gen_n, "number of points")->check(CLI::PositiveNumber);
  gen->add_option("--lp", gen_lp, "write an LP instance instead: feasible or infeasible")
      ->check(CLI::IsMember({"feasible", "infeasible"}));
  gen->add_option("--bound", gen_bound, "LP norm bound N")->check(CLI::PositiveNumber);

  // solve
  auto* slv = app.add_subcommand("solve", "solve one instance file");
  std::string slv_path, slv_solver = "TA", slv_json;
  slv->add_option("instance", slv_path, "CHMP v1 file")->required();
  slv->add_option("--solver", slv_solver, "TA, GT, FW, ASFW, SPG or PROJ");
  slv->add_option("--json", slv_json, "also write a JSON record to this path");

  // bench
  auto* bch = app.add_subcommand("bench", "run a solver sweep and write CSV");
  BenchConfig bc;
  std::string bch_case = "a";
  std::vector<std::string> bch_solvers{"TA", "GT", "ASFW", "SPG"};
  bch->add_option("--case", bch_case, "instance case");
  bch->add_option("-m", bc.m, "dimension")->check(CLI::PositiveNumber);
  bch->add_option("-n", bc.n_list, "one or more point counts")->delimiter(',');
  bch->add_option("--reps", bc.repetitions, "instances per n")->check(CLI::PositiveNumber);
  bch->add_option("--solvers", bch_solvers, "solver list")->delimiter(',');

  // lpfeas
  auto* lpf = app.add_subcommand("lpfeas", "decide bounded LP feasibility via the embedded CHMP");
  std::string lpf_path, lpf_solver = "GT";
  lpf->add_option("instance", lpf_path, "LPF v1 file")->required();
  lpf->add_option("--solver", lpf_solver, "solver for the embedded problem");

  // classify
  auto* cls = app.add_subcommand("classify", "nearest-hull classification of IDX images");
  std::string train_img, train_lab, test_img, test_lab, cls_solver = "TA", cls_summary;
  std::size_t per_class = 1000, test_limit = 200;
  cls->add_option("--train-images", train_img)->required();
  cls->add_option("--train-labels", train_lab)->required();
  cls->add_option("--test-images", test_img)->required();
  cls->add_option("--test-labels", test_lab)->required();
  cls->add_option("--per-class", per_class, "training points kept per class");
  cls->add_option("--test-limit", test_limit, "test points used");
  cls->add_option("--solver", cls_solver, "TA, GT, ASFW, SPG or PROJ");
  cls->add_option("--summary", cls_summary, "per-class summary CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const bool eps_given = eps_opt->count() > 0;
  try {
    if (*gen) {
      Sink sink(g.out);
      if (!gen_lp.empty()) {
        Rng rng(g.seed);
        write_lp(sink.get(), gen_lp_instance(gen_m, gen_n, gen_lp == "feasible", gen_bound, rng));
      } else {
        InstanceSpec spec;
        spec.kind = parse_case(gen_case);
        spec.m = gen_m;
        spec.n = gen_n;
        spec.seed = g.seed;
        write_instance(sink.get(), generate(spec));
      }
      return 0;
    }

    if (*slv) {
      const Instance inst = load_instance(slv_path);
      const SolverKind kind = parse_solver(slv_solver);
      const SolveReport rep = solve(kind, inst.points, inst.p, make_config(g));
      Sink sink(g.out);
      auto& out = sink.get();
      out << "solver " << to_string(kind) << '\n' << "eps " << g.eps << '\n'
          << "outcome " << to_string(rep.kind()) << '\n'
          << "iterations " << rep.iterations << '\n';
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10e", rep.distance());
      out << (rep.kind() == OutcomeKind::Witness ? "witness_distance " : "delta ") << buf << '\n';
      std::snprintf(buf, sizeof buf, "%.6f", rep.wall_time);
      out << "time_s " << buf << '\n';
      if (g.trace) print_trace(out, rep);
      if (!slv_json.empty()) {
        nlohmann::json j;
        j["solver"] = std::string(to_string(kind));
        j["outcome"] = std::string(to_string(rep.kind()));
        j["iterations"] = rep.iterations;
        j["distance"] = rep.distance();
        j["time_s"] = rep.wall_time;
        const Vector& w = rep.iterate().weights();
        j["weights"] = std::vector<double>(w.data(), w.data() + w.size());
        if (const auto* cert = rep.certificate()) {
          j["hyperplane"] = {{"normal", std::vector<double>(cert->normal.data(),
                                                            cert->normal.data() + cert->normal.size())},
                             {"offset", cert->offset}};
        }
        std::ofstream js(slv_json);
        if (!js) throw FormatError("cannot write '" + slv_json + "'");
        js << j.dump(2) << '\n';
      }
      return exit_code(rep.kind());
    }

    if (*bch) {
      bc.kind = parse_case(bch_case);
      bc.eps = g.eps;
      bc.seed_base = g.seed;
      bc.jobs = g.jobs;
      if (g.maxit > 0) bc.maxit = g.maxit;
      bc.solvers.clear();
      for (const auto& s : bch_solvers) bc.solvers.push_back(parse_solver(s));
      const auto rows = run_bench(bc);
      Sink sink(g.out);
      write_bench_csv(sink.get(), rows);
      return 0;
    }

    if (*lpf) {
      const LpInstance lp = load_lp(lpf_path);
      SolverConfig cfg = lp_solver_config();
      cfg.seed = g.seed;
      cfg.trace = g.trace;
      if (eps_given) cfg.eps = g.eps;
      if (g.maxit > 0) cfg.maxit = g.maxit;
      const FeasibilityVerdict v = solve_feasibility(lp, parse_solver(lpf_solver), cfg);
      Sink sink(g.out);
      auto& out = sink.get();
      out << "verdict " << v.label() << '\n'
          << "outcome " << to_string(v.report.kind()) << '\n'
          << "iterations " << v.report.iterations << '\n';
      if (const auto* f = std::get_if<Feasible>(&v.verdict)) {
        out << "residual " << f->solution.residual << '\n'
            << "residual_bound " << f->solution.bound << '\n'
            << "within_bounds " << (f->solution.within_bounds(v.eps_r) ? "yes" : "no") << '\n';
      } else if (const auto* i = std::get_if<Infeasible>(&v.verdict)) {
        out << "witness_distance " << i->certificate.distance << '\n';
      } else {
        out << "reason " << std::get<Inconclusive>(v.verdict).reason << '\n';
      }
      out << "time_s " << v.report.wall_time << '\n';
      return v.feasible() ? 0 : v.infeasible() ? 2 : 3;
    }

    if (*cls) {
      const LabeledPointSet train =
          group_by_label(read_idx(train_img, train_lab), per_class);
      const LabeledSamples test = read_idx(test_img, test_lab, test_limit);
      SolverConfig cfg = classifier_config(g.eps);
      cfg.seed = g.seed;
      if (g.maxit > 0) cfg.maxit = g.maxit;
      const AccuracyReport rep =
          accuracy_report(train, test, parse_solver(cls_solver), cfg, g.jobs);
      Sink sink(g.out);
      rep.write_csv(sink.get());
      if (!cls_summary.empty()) {
        std::ofstream s(cls_summary);
        if (!s) throw FormatError("cannot write '" + cls_summary + "'");
        rep.write_summary_csv(s);
      }
      std::cerr << "accuracy " << rep.accuracy << " over " << test.size() << " test points, "
                << rep.wall_time << " s\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
