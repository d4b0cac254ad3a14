#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "maxcon/geometry.hpp"
#include "maxcon/influence.hpp"
#include "maxcon/parallel.hpp"
#include "maxcon/solvers.hpp"

namespace maxcon {

inline constexpr const char* kBenchCsvVersion = "maxcon-bench-csv v1";
inline constexpr const char* kBenchCsvColumns =
    "method,n,n_out,seed,consensus,exact_gap,iterations,oracle_queries,wall_time,status";

struct BenchConfig {
  std::size_t dim = 4;
  std::size_t n = 30;
  std::vector<std::size_t> outlier_sweep{3, 4, 5, 6, 7, 8};
  std::size_t repeats = 50;
  std::uint64_t seed = 1;
  std::vector<Method> methods{Method::max, Method::linf, Method::exact};
  std::size_t m = 500;
  std::optional<double> q;
  ExactLimits exact_limits{};

  void validate() const {
    if (repeats < 1) throw std::invalid_argument("bench: repeats must be >= 1");
    if (outlier_sweep.empty()) throw std::invalid_argument("bench: outlier sweep is empty");
    if (methods.empty()) throw std::invalid_argument("bench: no methods selected");
    for (auto k : outlier_sweep) {
      if (k >= n) throw std::invalid_argument("bench: outlier count must be below n");
    }
    if (n == 0 || n > kMaxPoints) throw std::invalid_argument("bench: n must be in [1, 64]");
    if (dim == 0) throw std::invalid_argument("bench: dim must be positive");
  }

  /// Seed of repeat r; independent of the outlier count so sweeps pair up.
  [[nodiscard]] std::uint64_t seed_for(std::size_t n_out, std::size_t r) const {
    return splitmix64(seed * 1000003ULL + r) ^ (static_cast<std::uint64_t>(n_out) << 48);
  }
};

struct BenchRow {
  Method method = Method::max;
  std::size_t n = 0;
  std::size_t n_out = 0;
  std::uint64_t seed = 0;
  std::size_t consensus = 0;
  std::optional<long> exact_gap;
  std::size_t iterations = 0;
  std::uint64_t oracle_queries = 0;
  double wall_time = 0.0;
  std::string status = "ok";
};

inline void write_csv_header(std::ostream& os) {
  os << "# " << kBenchCsvVersion << '\n' << kBenchCsvColumns << '\n';
}

inline void write_csv_row(std::ostream& os, const BenchRow& r) {
  os << to_string(r.method) << ',' << r.n << ',' << r.n_out << ',' << r.seed << ',' << r.consensus << ',';
  if (r.exact_gap) os << *r.exact_gap;
  os << ',' << r.iterations << ',' << r.oracle_queries << ',' << std::setprecision(6) << r.wall_time << ','
     << r.status << '\n';
}

inline BenchRow row_from_report(const SolveReport& rep, std::size_t n, std::size_t n_out, std::uint64_t seed) {
  BenchRow row;
  row.method = rep.method;
  row.n = n;
  row.n_out = n_out;
  row.seed = seed;
  row.consensus = rep.consensus_size;
  row.iterations = rep.iterations;
  row.oracle_queries = rep.oracle_queries;
  row.wall_time = rep.wall_time;
  if (rep.partial) row.status = "limit";
  return row;
}

/// Runs one instance for every configured method, exact first so the others
/// can report their gap to the optimum.
inline std::vector<BenchRow> bench_instance(const BenchConfig& cfg, std::size_t n_out, std::size_t repeat) {
  const std::uint64_t seed = cfg.seed_for(n_out, repeat);
  const GeometricOracle oracle(gen_synthetic(cfg.n, n_out, cfg.dim, seed));
  std::vector<BenchRow> rows;
  std::optional<std::size_t> optimum;

  const bool want_exact = std::find(cfg.methods.begin(), cfg.methods.end(), Method::exact) != cfg.methods.end();
  std::optional<BenchRow> exact_row;
  if (want_exact) {
    try {
      const auto rep = exact_maxcon(oracle, cfg.n, cfg.exact_limits);
      optimum = rep.consensus_size;
      exact_row = row_from_report(rep, cfg.n, n_out, seed);
      exact_row->exact_gap = 0;
    } catch (const ResourceLimitError& e) {
      exact_row = row_from_report(e.partial(), cfg.n, n_out, seed);
    } catch (const std::exception&) {
      exact_row = BenchRow{Method::exact, cfg.n, n_out, seed, 0, std::nullopt, 0, 0, 0.0, "error"};
    }
  }

  for (auto method : cfg.methods) {
    if (method == Method::exact) {
      rows.push_back(*exact_row);
      continue;
    }
    try {
      SolveReport rep;
      if (method == Method::greedy) {
        std::vector<std::size_t> order(cfg.n);
        for (std::size_t i = 0; i < cfg.n; ++i) order[i] = i;
        rep = greedy_maxcon(oracle, cfg.n, order);
      } else {
        const SampleBudget budget{cfg.m, cfg.q.value_or(default_q(cfg.dim, cfg.n)), seed};
        rep = bmf_maxcon(oracle, cfg.n, method, budget);
      }
      auto row = row_from_report(rep, cfg.n, n_out, seed);
      if (optimum) row.exact_gap = static_cast<long>(*optimum) - static_cast<long>(rep.consensus_size);
      rows.push_back(row);
    } catch (const std::exception&) {
      rows.push_back(BenchRow{method, cfg.n, n_out, seed, 0, std::nullopt, 0, 0, 0.0, "error"});
    }
  }
  return rows;
}

/// Full sweep. Instances may run on several workers; rows come back in
/// config order (outlier count, repeat, method).
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg, std::ostream* sink = nullptr) {
  cfg.validate();
  const std::size_t tasks = cfg.outlier_sweep.size() * cfg.repeats;
  std::vector<std::vector<BenchRow>> per_task(tasks);
  parallel_for(
      tasks,
      [&](std::size_t t) {
        per_task[t] = bench_instance(cfg, cfg.outlier_sweep[t / cfg.repeats], t % cfg.repeats);
      },
      worker_count(), 2);
  std::vector<BenchRow> rows;
  if (sink) write_csv_header(*sink);
  for (auto& group : per_task) {
    for (auto& r : group) {
      if (sink) write_csv_row(*sink, r);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

/// Linear-interpolated percentile of a sample, q in [0, 1].
inline double percentile(std::vector<double> v, double q) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

struct BenchSummary {
  Method method = Method::max;
  std::size_t n_out = 0;
  std::size_t runs = 0;
  double mean_consensus = 0.0;
  std::optional<double> mean_gap;
  std::optional<double> gap_p05, gap_p95;
  double mean_iterations = 0.0;
  double time_p05 = 0.0, time_mean = 0.0, time_p95 = 0.0;
};

inline std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows) {
  std::map<std::pair<int, std::size_t>, std::vector<const BenchRow*>> groups;
  for (const auto& r : rows) {
    if (r.status == "ok") groups[{static_cast<int>(r.method), r.n_out}].push_back(&r);
  }
  std::vector<BenchSummary> out;
  for (const auto& [key, group] : groups) {
    BenchSummary s;
    s.method = static_cast<Method>(key.first);
    s.n_out = key.second;
    s.runs = group.size();
    std::vector<double> gaps, times;
    double cons = 0.0, iters = 0.0;
    for (const auto* r : group) {
      cons += static_cast<double>(r->consensus);
      iters += static_cast<double>(r->iterations);
      times.push_back(r->wall_time);
      if (r->exact_gap) gaps.push_back(static_cast<double>(*r->exact_gap));
    }
    s.mean_consensus = cons / static_cast<double>(s.runs);
    s.mean_iterations = iters / static_cast<double>(s.runs);
    s.time_p05 = percentile(times, 0.05);
    s.time_p95 = percentile(times, 0.95);
    double tsum = 0.0;
    for (auto t : times) tsum += t;
    s.time_mean = tsum / static_cast<double>(times.size());
    if (!gaps.empty()) {
      double g = 0.0;
      for (auto v : gaps) g += v;
      s.mean_gap = g / static_cast<double>(gaps.size());
      s.gap_p05 = percentile(gaps, 0.05);
      s.gap_p95 = percentile(gaps, 0.95);
    }
    out.push_back(s);
  }
  return out;
}

inline void write_summary(std::ostream& os, const std::vector<BenchSummary>& summary) {
  os << "method,n_out,runs,mean_consensus,mean_gap,gap_p05,gap_p95,mean_iterations,time_p05,time_mean,time_p95\n";
  os << std::setprecision(6);
  for (const auto& s : summary) {
    os << to_string(s.method) << ',' << s.n_out << ',' << s.runs << ',' << s.mean_consensus << ',';
    if (s.mean_gap) os << *s.mean_gap;
    os << ',';
    if (s.gap_p05) os << *s.gap_p05;
    os << ',';
    if (s.gap_p95) os << *s.gap_p95;
    os << ',' << s.mean_iterations << ',' << s.time_p05 << ',' << s.time_mean << ',' << s.time_p95 << '\n';
  }
}

/// Ordinary least-squares slope of y on x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace maxcon
