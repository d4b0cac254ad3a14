#pragma once

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maxcon/maxcon.hpp"

namespace maxcon::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kResourceLimit = 3 };

struct GenOptions {
  std::size_t n = 100;
  std::size_t outliers = 10;
  std::size_t dim = 8;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::string out;  // empty: stdout
};

inline int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream& err) {
  Dataset data = gen_synthetic(o.n, o.outliers, o.dim, o.seed);
  if (o.epsilon) {
    data.epsilon = *o.epsilon;
    data.validate();
  }
  const std::string text = to_json(data).dump() + "\n";
  std::ostream& log = o.out.empty() ? err : out;
  if (o.out.empty()) {
    out << text;
  } else {
    write_text_file(o.out, text);
  }
  log << "generated N=" << data.size() << " N_o=" << o.outliers << " dim=" << data.dim
      << " epsilon=" << data.epsilon << " seed=" << o.seed << '\n';
  return kOk;
}

struct SolveOptions {
  std::string data;
  Method method = Method::linf;
  std::size_t m = 500;
  std::optional<double> q;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::size_t max_nodes = ExactLimits{}.max_nodes;
  bool stale_influences = false;
  std::string out;
  std::string residuals;
};

inline int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  Dataset data = dataset_from_json(read_json_file(o.data));
  if (o.epsilon) {
    data.epsilon = *o.epsilon;
    data.validate();
  }
  const GeometricOracle oracle(data);
  const std::size_t n = data.size();

  SolveReport rep;
  int code = kOk;
  switch (o.method) {
    case Method::max:
    case Method::linf: {
      const SampleBudget budget{o.m, o.q.value_or(default_q(data.dim, n)), o.seed};
      rep = bmf_maxcon(oracle, n, o.method, budget, BmfOptions{!o.stale_influences, true});
      break;
    }
    case Method::exact:
      try {
        rep = exact_maxcon(oracle, n, ExactLimits{o.max_nodes, 64});
      } catch (const ResourceLimitError& e) {
        err << e.what() << '\n';
        rep = e.partial();
        code = kResourceLimit;
      }
      break;
    case Method::greedy: {
      std::vector<std::size_t> order(n);
      for (std::size_t i = 0; i < n; ++i) order[i] = i;
      rep = greedy_maxcon(oracle, n, order);
      break;
    }
  }

  const std::string text = to_json(rep).dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_text_file(o.out, text);
    out << "method=" << to_string(rep.method) << " consensus=" << rep.consensus_size << "/" << n
        << " iterations=" << rep.iterations << " queries=" << rep.oracle_queries << '\n';
  }
  if (!o.residuals.empty()) {
    const auto fit = oracle.fit(rep.solution);
    std::ostringstream csv;
    write_residuals_csv(csv, data, std::vector<double>(fit.theta.data(), fit.theta.data() + fit.theta.size()));
    write_text_file(o.residuals, csv.str());
  }
  return code;
}

struct InfluenceOptions {
  std::string data;     // dataset file
  std::string spec;     // ideal spec file
  std::string example;  // built-in id
  bool sampled = false;
  std::size_t m = 500;
  std::optional<double> q;
  std::uint64_t seed = 0;
  std::string out;
};

inline int cmd_influence(const InfluenceOptions& o, std::ostream& out, std::ostream&) {
  const int sources = !o.data.empty() + !o.spec.empty() + !o.example.empty();
  if (sources != 1) throw std::invalid_argument("influence: give exactly one of --data, --spec, --example");

  const auto run = [&](const auto& oracle, std::size_t n, std::size_t p) {
    if (!o.sampled) return exact_influences(oracle, n);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return sample_influences(oracle, all, SampleBudget{o.m, o.q.value_or(default_q(p, n)), o.seed}, n);
  };

  InfluenceVector vec;
  if (!o.data.empty()) {
    const GeometricOracle oracle(dataset_from_json(read_json_file(o.data)));
    vec = run(oracle, oracle.size(), oracle.dimension());
  } else {
    IdealSpec spec;
    if (!o.spec.empty()) {
      spec = ideal_spec_from_json(read_json_file(o.spec));
    } else {
      const auto b = find_builtin(o.example);
      if (!b) throw std::invalid_argument("influence: unknown example '" + o.example + "'");
      spec = b->spec;
    }
    const SyntheticOracle oracle(spec);
    vec = run(oracle, spec.n, spec.p);
  }
  const std::string text = to_json(vec).dump() + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_text_file(o.out, text);
  }
  return kOk;
}

struct VerifyOptions {
  std::vector<std::string> examples;  // built-in ids, or "all"
  std::string spec;
  bool assume_ideal = false;
  std::string out;
};

inline void print_verification(std::ostream& os, const std::string& label, const SpecVerification& v) {
  os << label << "  n=" << v.spec.n << " p=" << v.spec.p << " zeros=";
  for (const auto& z : v.spec.upper_zeros) os << z.str() << ' ';
  os << (v.ideal ? "(ideal)" : "(non-ideal)");
  if (!v.pseudo.empty()) {
    os << " pseudo=";
    for (const auto& a : v.pseudo) os << a.str() << ' ';
  }
  os << '\n' << "  point  cell        enumerated  closed-form  match\n";
  for (std::size_t i = 0; i < v.points.size(); ++i) {
    const auto& p = v.points[i];
    os << "  " << std::setw(5) << i << "  " << std::left << std::setw(10) << p.cell.str() << std::right << "  "
       << std::setw(10) << p.enumeration << "  " << std::setw(11) << to_string(p.formula) << "  "
       << (p.match ? "yes" : "NO") << '\n';
  }
}

inline int cmd_verify_ideal(const VerifyOptions& o, std::ostream& out, std::ostream&) {
  std::vector<std::pair<std::string, IdealSpec>> specs;
  bool assume_ideal = o.assume_ideal;
  if (!o.spec.empty()) {
    const Json j = read_json_file(o.spec);
    specs.emplace_back(o.spec, ideal_spec_from_json(j));
    assume_ideal = assume_ideal || j.value("ideal", false);
  }
  for (const auto& id : o.examples) {
    if (id == "all") {
      for (const auto& b : builtin_specs()) specs.emplace_back(b.id, b.spec);
      continue;
    }
    const auto b = find_builtin(id);
    if (!b) throw std::invalid_argument("verify-ideal: unknown example '" + id + "'");
    specs.emplace_back(b->id, b->spec);
  }
  if (specs.empty()) throw std::invalid_argument("verify-ideal: nothing to verify");

  Json report = Json::array();
  bool ok = true;
  for (const auto& [label, spec] : specs) {
    const auto v = verify_spec(spec, assume_ideal);
    print_verification(out, label, v);
    ok = ok && v.all_match();
    Json entry = to_json(v);
    entry["id"] = label;
    report.push_back(entry);
  }
  out << (ok ? "all points match\n" : "MISMATCH between enumeration and closed form\n");
  if (!o.out.empty()) write_text_file(o.out, report.dump(2) + "\n");
  return ok ? kOk : kDataError;
}

/// "3..8" or "3,5,7".
inline std::vector<std::size_t> parse_sweep(const std::string& s) {
  std::vector<std::size_t> out;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const auto lo = std::stoul(s.substr(0, dots));
    const auto hi = std::stoul(s.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("bad outlier range '" + s + "'");
    for (auto k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(std::stoul(tok));
  if (out.empty()) throw std::invalid_argument("empty outlier sweep");
  return out;
}

struct BenchOptions {
  BenchConfig config;
  std::string out;
  std::string summary;
};

inline int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  std::ostringstream csv;
  const auto rows = run_bench(o.config, &csv);
  if (o.out.empty()) {
    out << csv.str();
  } else {
    write_text_file(o.out, csv.str());
  }
  std::ostringstream summary;
  write_summary(summary, summarize(rows));
  if (o.summary.empty()) {
    err << summary.str();
  } else {
    write_text_file(o.summary, summary.str());
  }
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.status != "ok";
  if (failed > 0) err << failed << " row(s) did not complete\n";
  return kOk;
}

}  // namespace maxcon::cli
