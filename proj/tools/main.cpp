#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace maxcon;
using namespace maxcon::cli;

int main(int argc, char** argv) {
  CLI::App app{"Maximum consensus via monotone Boolean function influences"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic robust-regression dataset");
  g->add_option("--n", gen.n, "Number of points")->capture_default_str();
  g->add_option("--outliers", gen.outliers, "Number of outliers")->capture_default_str();
  g->add_option("--dim", gen.dim, "Model dimension")->capture_default_str();
  g->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  g->add_option("--epsilon", gen.epsilon, "Override inlier threshold (default 0.1)");
  g->add_option("--out", gen.out, "Output file (default stdout)");

  SolveOptions solve;
  std::string solve_method = "linf";
  auto* s = app.add_subcommand("solve", "Solve MaxCon on a dataset file");
  s->add_option("data", solve.data, "Dataset JSON")->required();
  s->add_option("--method", solve_method, "max | linf | exact | greedy")
      ->check(CLI::IsMember({"max", "linf", "exact", "greedy"}))
      ->capture_default_str();
  s->add_option("--m", solve.m, "Oracle queries per influence estimate (even)")->capture_default_str();
  s->add_option("--q", solve.q, "Bit inclusion probability (default (p+3)/N)");
  s->add_option("--seed", solve.seed, "RNG seed")->capture_default_str();
  s->add_option("--epsilon", solve.epsilon, "Override the dataset's threshold");
  s->add_option("--max-nodes", solve.max_nodes, "Node budget for --method exact")->capture_default_str();
  s->add_flag("--stale-influences", solve.stale_influences, "Estimate each influence once and reuse it");
  s->add_option("--out", solve.out, "Report JSON file (default stdout)");
  s->add_option("--residuals", solve.residuals, "Write per-point residuals of the final fit as CSV");

  InfluenceOptions infl;
  std::string infl_mode = "exact";
  auto* in = app.add_subcommand("influence", "Dump exact or sampled influences");
  in->add_option("mode", infl_mode, "exact | sampled")->check(CLI::IsMember({"exact", "sampled"}));
  in->add_option("--data", infl.data, "Dataset JSON");
  in->add_option("--spec", infl.spec, "Ideal spec JSON");
  in->add_option("--example", infl.example, "Built-in spec id (ex1..ex4)");
  in->add_option("--m", infl.m, "Oracle queries (sampled mode)")->capture_default_str();
  in->add_option("--q", infl.q, "Bit inclusion probability (default (p+3)/N)");
  in->add_option("--seed", infl.seed, "RNG seed")->capture_default_str();
  in->add_option("--out", infl.out, "Output file (default stdout)");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify-ideal", "Check closed-form influences against enumeration");
  v->add_option("examples", verify.examples, "Built-in ids: ex1 ex2 ex3 ex4 or all");
  v->add_option("--spec", verify.spec, "Ideal spec JSON");
  v->add_flag("--assume-ideal", verify.assume_ideal, "Ignore pseudo upper zeros");
  v->add_option("--out", verify.out, "JSON report file");

  BenchOptions bench;
  std::string sweep = "3..8";
  std::vector<std::string> methods{"max", "linf", "exact"};
  double bench_q = 0.0;
  auto* b = app.add_subcommand("bench", "Outlier-sweep benchmark on synthetic regression");
  b->add_option("--dim", bench.config.dim, "Model dimension")->capture_default_str();
  b->add_option("--n", bench.config.n, "Number of points")->capture_default_str();
  b->add_option("--outliers", sweep, "Outlier counts: lo..hi or a,b,c")->capture_default_str();
  b->add_option("--repeats", bench.config.repeats, "Instances per outlier count")->capture_default_str();
  b->add_option("--seed", bench.config.seed, "Base seed")->capture_default_str();
  b->add_option("--method", methods, "Methods to run")
      ->check(CLI::IsMember({"max", "linf", "exact", "greedy"}))
      ->delimiter(',');
  b->add_option("--m", bench.config.m, "Oracle queries per influence estimate")->capture_default_str();
  auto* qopt = b->add_option("--q", bench_q, "Bit inclusion probability (default (p+3)/N)");
  b->add_option("--max-nodes", bench.config.exact_limits.max_nodes, "Node budget for exact")->capture_default_str();
  b->add_option("--out", bench.out, "CSV file (default stdout)");
  b->add_option("--summary", bench.summary, "Percentile summary CSV (default stderr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_gen(gen, std::cout, std::cerr);
    if (*s) {
      solve.method = parse_method(solve_method);
      return cmd_solve(solve, std::cout, std::cerr);
    }
    if (*in) {
      infl.sampled = infl_mode == "sampled";
      return cmd_influence(infl, std::cout, std::cerr);
    }
    if (*v) return cmd_verify_ideal(verify, std::cout, std::cerr);
    if (*b) {
      bench.config.outlier_sweep = parse_sweep(sweep);
      bench.config.methods.clear();
      for (const auto& m : methods) bench.config.methods.push_back(parse_method(m));
      if (*qopt) bench.config.q = bench_q;
      return cmd_bench(bench, std::cout, std::cerr);
    }
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}
