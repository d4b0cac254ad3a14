#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "maxcon/influence.hpp"
#include "maxcon/oracle.hpp"
#include "maxcon/point_set.hpp"

namespace maxcon {

enum class Method { max, linf, exact, greedy };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::max: return "max";
    case Method::linf: return "linf";
    case Method::exact: return "exact";
    case Method::greedy: return "greedy";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "max") return Method::max;
  if (s == "linf") return Method::linf;
  if (s == "exact") return Method::exact;
  if (s == "greedy") return Method::greedy;
  throw std::invalid_argument("unknown method '" + s + "'");
}

struct SolveReport {
  Method method = Method::max;
  PointSet solution;
  std::size_t consensus_size = 0;
  std::size_t iterations = 0;
  std::vector<std::size_t> removed_sequence;
  /// Every oracle call made by the solver.
  std::uint64_t oracle_queries = 0;
  /// Subset of oracle_queries spent on the f(x) = 0 stopping test.
  std::uint64_t termination_queries = 0;
  /// Subset of oracle_queries spent in local expansion.
  std::uint64_t expansion_queries = 0;
  double wall_time = 0.0;  // seconds
  /// Set when a resource limit cut the search short.
  bool partial = false;
};

class NonMonotoneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, SolveReport partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  [[nodiscard]] const SolveReport& partial() const { return partial_; }

 private:
  SolveReport partial_;
};

namespace detail {

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// Grows a feasible set one point at a time: scans the excluded points in
/// ascending order, takes the first whose addition stays feasible and
/// restarts the scan, until no single addition is feasible.
template <FeasibilityOracle O>
PointSet local_expansion(const O& oracle, PointSet x) {
  if (oracle.evaluate(x).infeasible) throw std::invalid_argument("local_expansion: start set is infeasible");
  for (bool grown = true; grown;) {
    grown = false;
    for (auto z : x.complement().indices()) {
      const PointSet candidate = x.with(z);
      if (!oracle.evaluate(candidate).infeasible) {
        x = candidate;
        grown = true;
        break;
      }
    }
  }
  return x;
}

struct BmfOptions {
  /// Re-estimate influences every iteration; when false, an estimate is
  /// computed once per point and then reused.
  bool reestimate = true;
  bool monotone_shortcut = true;
};

/// Influence-guided descent from the full set: remove the point with the
/// largest estimated influence until the remainder is feasible, then run
/// local expansion. `Method::max` estimates every included point;
/// `Method::linf` only the basis of the current fit.
template <FeasibilityOracle O>
SolveReport bmf_maxcon(const O& oracle, std::size_t n, Method method, const SampleBudget& budget,
                       const BmfOptions& opts = {}) {
  if (method != Method::max && method != Method::linf) {
    throw std::invalid_argument("bmf_maxcon: method must be max or linf");
  }
  budget.validate();
  detail::Stopwatch clock;
  const std::uint64_t q0 = oracle.queries();
  SolveReport rep;
  rep.method = method;

  PointSet x = PointSet::full(n);
  std::map<std::size_t, double> stale;
  FeasibilityResult verdict = oracle.evaluate(x);
  ++rep.termination_queries;
  while (verdict.infeasible) {
    if (x.level() == 0) throw NonMonotoneError("bmf_maxcon: empty set reported infeasible");
    std::vector<std::size_t> candidates;
    if (method == Method::max) {
      candidates = x.indices();
    } else {
      if (!verdict.basis) throw std::invalid_argument("bmf_maxcon: linf method needs an oracle that returns a basis");
      for (auto i : *verdict.basis) {
        if (x.contains(i)) candidates.push_back(i);
      }
      if (candidates.empty()) throw std::runtime_error("bmf_maxcon: empty basis for an infeasible set");
    }

    std::vector<std::size_t> to_estimate;
    for (auto i : candidates) {
      if (opts.reestimate || !stale.contains(i)) to_estimate.push_back(i);
    }
    if (!to_estimate.empty()) {
      SampleOptions so;
      so.support = x;
      so.iteration = rep.iterations;
      so.monotone_shortcut = opts.monotone_shortcut;
      const auto est = sample_influences(oracle, to_estimate, budget, n, so);
      for (auto i : to_estimate) stale[i] = est.values[i];
    }

    std::size_t worst = candidates.front();
    for (auto i : candidates) {
      if (stale[i] > stale[worst] || (stale[i] == stale[worst] && i < worst)) worst = i;
    }
    x = x.without(worst);
    rep.removed_sequence.push_back(worst);
    ++rep.iterations;
    verdict = oracle.evaluate(x);
    ++rep.termination_queries;
  }

  const std::uint64_t before_expansion = oracle.queries();
  x = local_expansion(oracle, x);
  rep.expansion_queries = oracle.queries() - before_expansion;
  if (oracle.evaluate(x).infeasible) throw NonMonotoneError("bmf_maxcon: expanded solution is infeasible");

  rep.solution = x;
  rep.consensus_size = x.level();
  rep.oracle_queries = oracle.queries() - q0;
  rep.wall_time = clock.seconds();
  return rep;
}

/// Adds points in `order`, keeping each one whose addition stays feasible.
template <FeasibilityOracle O>
SolveReport greedy_maxcon(const O& oracle, std::size_t n, const std::vector<std::size_t>& order) {
  std::vector<bool> seen(n, false);
  if (order.size() != n) throw std::invalid_argument("greedy_maxcon: order is not a permutation");
  for (auto i : order) {
    if (i >= n || seen[i]) throw std::invalid_argument("greedy_maxcon: order is not a permutation");
    seen[i] = true;
  }
  detail::Stopwatch clock;
  const std::uint64_t q0 = oracle.queries();
  SolveReport rep;
  rep.method = Method::greedy;
  PointSet x(n);
  for (auto i : order) {
    const PointSet candidate = x.with(i);
    if (!oracle.evaluate(candidate).infeasible) x = candidate;
  }
  rep.solution = x;
  rep.consensus_size = x.level();
  rep.oracle_queries = oracle.queries() - q0;
  rep.wall_time = clock.seconds();
  return rep;
}

struct ExactLimits {
  std::size_t max_nodes = 5'000'000;
  std::size_t max_depth = 64;
};

/// Breadth-first basis branching from the full set. An infeasible set's
/// basis is itself infeasible, so every feasible subset drops at least one
/// basis member; the first feasible set met at the smallest removal depth is
/// therefore a maximum consensus set. Visited masks are deduplicated.
template <FeasibilityOracle O>
SolveReport exact_maxcon(const O& oracle, std::size_t n, const ExactLimits& limits = {}) {
  detail::Stopwatch clock;
  const std::uint64_t q0 = oracle.queries();
  SolveReport rep;
  rep.method = Method::exact;

  std::vector<PointSet> frontier{PointSet::full(n)};
  std::unordered_set<PointSet> visited{frontier.front()};
  for (std::size_t depth = 0;; ++depth) {
    std::vector<PointSet> next;
    for (const auto& node : frontier) {
      const auto verdict = oracle.evaluate(node);
      if (!verdict.infeasible) {
        rep.solution = node;
        rep.consensus_size = node.level();
        rep.iterations = depth;
        rep.removed_sequence = node.complement().indices();
        rep.oracle_queries = oracle.queries() - q0;
        rep.wall_time = clock.seconds();
        return rep;
      }
      if (!verdict.basis || verdict.basis->empty()) {
        throw std::invalid_argument("exact_maxcon: oracle returned no basis for an infeasible set");
      }
      for (auto i : *verdict.basis) {
        if (!node.contains(i)) continue;
        const PointSet child = node.without(i);
        if (visited.insert(child).second) next.push_back(child);
      }
      if (visited.size() > limits.max_nodes || depth >= limits.max_depth) {
        // Best effort: a 1-maximal feasible set reached by local expansion.
        rep.solution = local_expansion(oracle, PointSet(n));
        rep.consensus_size = rep.solution.level();
        rep.iterations = depth;
        rep.removed_sequence = rep.solution.complement().indices();
        rep.partial = true;
        rep.oracle_queries = oracle.queries() - q0;
        rep.wall_time = clock.seconds();
        throw ResourceLimitError("exact_maxcon: node limit exceeded at depth " + std::to_string(depth), rep);
      }
    }
    if (next.empty()) throw NonMonotoneError("exact_maxcon: search exhausted without a feasible set");
    frontier = std::move(next);
  }
}

}  // namespace maxcon
