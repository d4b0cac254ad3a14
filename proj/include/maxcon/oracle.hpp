#pragma once

#include <algorithm>
#include <atomic>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxcon/point_set.hpp"
#include "maxcon/rng.hpp"

namespace maxcon {

/// Verdict of a feasibility oracle. `infeasible` is the Boolean function
/// value f(x); the basis, when present, holds at most p+1 members of x.
struct FeasibilityResult {
  bool infeasible = false;
  std::optional<std::vector<std::size_t>> basis;

  [[nodiscard]] bool feasible() const { return !infeasible; }
};

/// Atomic query tally that stays copyable (a copy snapshots the count).
class QueryCounter {
 public:
  QueryCounter() = default;
  QueryCounter(const QueryCounter& other) : count_(other.load()) {}
  QueryCounter& operator=(const QueryCounter& other) {
    count_.store(other.load(), std::memory_order_relaxed);
    return *this;
  }

  void bump(std::uint64_t k = 1) const { count_.fetch_add(k, std::memory_order_relaxed); }
  [[nodiscard]] std::uint64_t load() const { return count_.load(std::memory_order_relaxed); }
  void reset() const { count_.store(0, std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::uint64_t> count_{0};
};

/// A monotone feasibility oracle over an n-point universe with
/// combinatorial dimension p.
template <class O>
concept FeasibilityOracle = requires(const O& o, const PointSet& x) {
  { o.evaluate(x) } -> std::same_as<FeasibilityResult>;
  { o.size() } -> std::convertible_to<std::size_t>;
  { o.dimension() } -> std::convertible_to<std::size_t>;
  { o.queries() } -> std::convertible_to<std::uint64_t>;
};

// ---------------------------------------------------------------------------
// Synthetic oracles declared by their upper zeros.

struct IdealSpec {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<PointSet> upper_zeros;

  /// Throws std::invalid_argument when the declaration is malformed.
  void validate() const {
    if (n == 0 || n > kMaxPoints) throw std::invalid_argument("IdealSpec: n must be in [1, 64]");
    if (p >= n) throw std::invalid_argument("IdealSpec: p must be smaller than n");
    for (const auto& z : upper_zeros) {
      if (z.size() != n) throw std::invalid_argument("IdealSpec: upper zero " + z.str() + " has wrong length");
      if (z.level() <= p) throw std::invalid_argument("IdealSpec: upper zero " + z.str() + " is not above level p");
    }
    for (std::size_t a = 0; a < upper_zeros.size(); ++a) {
      for (std::size_t b = 0; b < upper_zeros.size(); ++b) {
        if (a != b && is_below(upper_zeros[a], upper_zeros[b])) {
          throw std::invalid_argument("IdealSpec: upper zero " + upper_zeros[a].str() + " lies below " +
                                      upper_zeros[b].str());
        }
      }
    }
  }

  /// Ideal iff every pair of upper-zero shadows is disjoint above level p.
  [[nodiscard]] bool is_ideal() const {
    for (std::size_t a = 0; a < upper_zeros.size(); ++a) {
      for (std::size_t b = a + 1; b < upper_zeros.size(); ++b) {
        if ((upper_zeros[a] & upper_zeros[b]).level() > p) return false;
      }
    }
    return true;
  }
};

/// f(x) for the MBF whose zeros are L_{<=p} plus the shadows of the upper zeros.
inline FeasibilityResult eval_synthetic(const IdealSpec& spec, const PointSet& x) {
  if (x.level() <= spec.p) return {false, std::nullopt};
  const bool covered =
      std::any_of(spec.upper_zeros.begin(), spec.upper_zeros.end(), [&](const PointSet& z) { return is_below(x, z); });
  return {!covered, std::nullopt};
}

/// Pairwise shadow intersections rising above level p (the AND of two
/// upper zeros), deduplicated in first-seen pair order.
inline std::vector<PointSet> pseudo_upper_zeros(const IdealSpec& spec) {
  std::vector<PointSet> out;
  for (std::size_t a = 0; a < spec.upper_zeros.size(); ++a) {
    for (std::size_t b = a + 1; b < spec.upper_zeros.size(); ++b) {
      const PointSet meet = spec.upper_zeros[a] & spec.upper_zeros[b];
      if (meet.level() > spec.p && std::find(out.begin(), out.end(), meet) == out.end()) out.push_back(meet);
    }
  }
  return out;
}

class SyntheticOracle {
 public:
  explicit SyntheticOracle(IdealSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

  [[nodiscard]] FeasibilityResult evaluate(const PointSet& x) const {
    if (x.size() != spec_.n) throw std::invalid_argument("SyntheticOracle: universe size mismatch");
    counter_.bump();
    return eval_synthetic(spec_, x);
  }

  [[nodiscard]] std::size_t size() const { return spec_.n; }
  [[nodiscard]] std::size_t dimension() const { return spec_.p; }
  [[nodiscard]] std::uint64_t queries() const { return counter_.load(); }
  void reset_queries() const { counter_.reset(); }
  [[nodiscard]] const IdealSpec& spec() const { return spec_; }

 private:
  IdealSpec spec_;
  QueryCounter counter_;
};

/// Oracle backed by an arbitrary callable; used for planted violations.
class FunctionOracle {
 public:
  FunctionOracle(std::size_t n, std::size_t p, std::function<bool(const PointSet&)> infeasible)
      : n_(n), p_(p), fn_(std::move(infeasible)) {}

  [[nodiscard]] FeasibilityResult evaluate(const PointSet& x) const {
    counter_.bump();
    return {fn_(x), std::nullopt};
  }
  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::size_t dimension() const { return p_; }
  [[nodiscard]] std::uint64_t queries() const { return counter_.load(); }

 private:
  std::size_t n_;
  std::size_t p_;
  std::function<bool(const PointSet&)> fn_;
  QueryCounter counter_;
};

/// Supplies a basis for oracles that cannot: on an infeasible x it returns a
/// minimal infeasible subset found by deleting members in ascending order.
/// Every feasible subset of x must omit at least one of its members, which is
/// all basis branching needs.
template <FeasibilityOracle Inner>
class MinimalInfeasibleBasis {
 public:
  explicit MinimalInfeasibleBasis(const Inner& inner) : inner_(&inner) {}

  [[nodiscard]] FeasibilityResult evaluate(const PointSet& x) const {
    auto r = inner_->evaluate(x);
    if (!r.infeasible || r.basis) return r;
    PointSet core = x;
    for (auto i : x.indices()) {
      const PointSet trial = core.without(i);
      if (inner_->evaluate(trial).infeasible) core = trial;
    }
    r.basis = core.indices();
    return r;
  }

  [[nodiscard]] std::size_t size() const { return inner_->size(); }
  [[nodiscard]] std::size_t dimension() const { return inner_->dimension(); }
  [[nodiscard]] std::uint64_t queries() const { return inner_->queries(); }

 private:
  const Inner* inner_;
};

/// Evaluates f on every vertex; entry x.bits() holds f(x). n <= 25.
template <FeasibilityOracle O>
std::vector<std::uint8_t> truth_table(const O& oracle, std::size_t n) {
  if (n > 25) throw std::invalid_argument("truth_table: exhaustive enumeration limited to n <= 25");
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < table.size(); ++v) {
    table[v] = oracle.evaluate(PointSet(n, v)).infeasible ? 1 : 0;
  }
  return table;
}

/// Exhaustive monotonicity check over every cube edge; n <= 20.
template <FeasibilityOracle O>
bool check_monotone(const O& oracle, std::size_t n) {
  if (n > 20) throw std::invalid_argument("check_monotone: exhaustive mode limited to n <= 20");
  const auto table = truth_table(oracle, n);
  for (std::uint64_t v = 0; v < table.size(); ++v) {
    if (table[v] == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t up = v | (std::uint64_t{1} << i);
      if (table[up] < table[v]) return false;
    }
  }
  return true;
}

/// Sampled monotonicity check: draws `pairs` random nested pairs x ⊆ y and
/// looks for f(x) > f(y).
template <FeasibilityOracle O>
bool check_monotone_sampled(const O& oracle, std::size_t n, std::size_t pairs, std::uint64_t seed) {
  for (std::size_t j = 0; j < pairs; ++j) {
    CounterRng rng(seed, 0x6D6F6E6FULL, j);
    const double q_low = rng.uniform(0.05, 0.6);
    PointSet x(n);
    PointSet y(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.bernoulli(q_low)) {
        x = x.with(i);
        y = y.with(i);
      } else if (rng.bernoulli(0.5)) {
        y = y.with(i);
      }
    }
    if (oracle.evaluate(x).infeasible && !oracle.evaluate(y).infeasible) return false;
  }
  return true;
}

}  // namespace maxcon
