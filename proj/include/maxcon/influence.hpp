#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxcon/oracle.hpp"
#include "maxcon/parallel.hpp"
#include "maxcon/point_set.hpp"
#include "maxcon/rng.hpp"

namespace maxcon {

/// Per-point influences. Exact vectors hold boundary-edge counts
/// (2^n times the degree-1 coefficient); sampled vectors hold estimates of
/// the coefficient itself. Entries that were not estimated are NaN.
struct InfluenceVector {
  enum class Mode { exact, sampled };

  Mode mode = Mode::exact;
  std::size_t n = 0;
  std::vector<double> values;

  [[nodiscard]] bool has(std::size_t i) const { return i < values.size() && !std::isnan(values[i]); }

  /// Index of the largest defined value; ties go to the lowest index.
  [[nodiscard]] std::size_t argmax() const {
    std::size_t best = values.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (has(i) && (best == values.size() || values[i] > values[best])) best = i;
    }
    if (best == values.size()) throw std::logic_error("InfluenceVector::argmax on an empty vector");
    return best;
  }
};

inline const char* to_string(InfluenceVector::Mode m) {
  return m == InfluenceVector::Mode::exact ? "exact" : "sampled";
}

/// Query budget for one round of influence estimation.
struct SampleBudget {
  std::size_t m = 500;
  double q = 0.5;
  std::uint64_t seed = 0;

  void validate() const {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("SampleBudget: m must be even and >= 2");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("SampleBudget: q must lie in (0, 1)");
  }
};

/// Level-concentrating sampling probability (p+3)/n, clamped into (0, 1).
inline double default_q(std::size_t p, std::size_t n) {
  const double q = static_cast<double>(p + 3) / static_cast<double>(std::max<std::size_t>(n, 1));
  return std::clamp(q, 0.01, 0.99);
}

/// Number of direction-i cube edges whose endpoints disagree, per i.
inline std::vector<std::uint64_t> boundary_edge_counts(const std::vector<std::uint8_t>& table, std::size_t n) {
  std::vector<std::uint64_t> counts(n, 0);
  for (std::uint64_t v = 0; v < table.size(); ++v) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if ((v & bit) == 0 && table[v] != table[v | bit]) ++counts[i];
    }
  }
  return counts;
}

template <FeasibilityOracle O>
InfluenceVector exact_influences(const O& oracle, std::size_t n) {
  if (n > 25) throw std::invalid_argument("exact_influences: n must be <= 25");
  const auto counts = boundary_edge_counts(truth_table(oracle, n), n);
  InfluenceVector out{InfluenceVector::Mode::exact, n, {}};
  out.values.assign(counts.begin(), counts.end());
  return out;
}

/// Fourier coefficient E[f(x) * (-1)^(1 + sum_{j in S} x_j)] under the
/// uniform measure. With this sign choice singleton coefficients of a
/// monotone f are non-negative.
inline double fourier_coefficient(const std::vector<std::uint8_t>& table, const PointSet& subset) {
  const std::uint64_t mask = subset.bits();
  std::int64_t acc = 0;
  for (std::uint64_t v = 0; v < table.size(); ++v) {
    if (table[v] == 0) continue;
    const bool odd = (std::popcount(v & mask) & 1) != 0;
    acc += odd ? 1 : -1;
  }
  return static_cast<double>(acc) / static_cast<double>(table.size());
}

struct SampleOptions {
  /// Only bits in `support` are drawn; others stay clear. Empty means all n.
  std::optional<PointSet> support;
  /// Iteration counter folded into the sample stream.
  std::uint64_t iteration = 0;
  /// Skip flips whose outcome monotonicity already decides.
  bool monotone_shortcut = true;
};

/// Paired estimator of the degree-1 coefficients of the candidates. Draws
/// m/2 base vertices with Bernoulli(q) bits, pairs each with its bit-i flip
/// and averages f(x)(-1)^(1+x_i) over all m points. Output is identical for
/// any worker count.
template <FeasibilityOracle O>
InfluenceVector sample_influences(const O& oracle, const std::vector<std::size_t>& candidates,
                                  const SampleBudget& budget, std::size_t n, const SampleOptions& opts = {}) {
  if (candidates.empty()) throw std::invalid_argument("sample_influences: empty candidate list");
  budget.validate();
  for (auto i : candidates) {
    if (i >= n) throw std::out_of_range("sample_influences: candidate index out of range");
  }
  const PointSet support = opts.support.value_or(PointSet::full(n));
  const auto drawable = support.indices();
  const std::size_t half = budget.m / 2;
  const std::size_t nc = candidates.size();

  // diff[j * nc + c] = f(x_j with i) - f(x_j without i)
  std::vector<std::int8_t> diff(half * nc, 0);
  parallel_for(half, [&](std::size_t j) {
    CounterRng rng(budget.seed, opts.iteration, j);
    std::uint64_t bits = 0;
    for (auto i : drawable) {
      if (rng.bernoulli(budget.q)) bits |= std::uint64_t{1} << i;
    }
    const PointSet base(n, bits);
    const bool f_base = oracle.evaluate(base).infeasible;
    for (std::size_t c = 0; c < nc; ++c) {
      const std::size_t i = candidates[c];
      const bool inside = base.contains(i);
      bool f_flip;
      if (opts.monotone_shortcut && f_base && !inside) {
        f_flip = true;
      } else if (opts.monotone_shortcut && !f_base && inside) {
        f_flip = false;
      } else {
        f_flip = oracle.evaluate(base.flip(i)).infeasible;
      }
      const int hi = inside ? f_base : f_flip;
      const int lo = inside ? f_flip : f_base;
      diff[j * nc + c] = static_cast<std::int8_t>(hi - lo);
    }
  });

  InfluenceVector out{InfluenceVector::Mode::sampled, n,
                      std::vector<double>(n, std::numeric_limits<double>::quiet_NaN())};
  for (std::size_t c = 0; c < nc; ++c) {
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < half; ++j) sum += diff[j * nc + c];
    out.values[candidates[c]] = static_cast<double>(sum) / static_cast<double>(budget.m);
  }
  return out;
}

/// Sum of the defined entries, on the vector's own scale.
inline double total_influence(const InfluenceVector& vec) {
  double total = 0.0;
  for (std::size_t i = 0; i < vec.values.size(); ++i) {
    if (vec.has(i)) total += vec.values[i];
  }
  return total;
}

/// Edge counts -> coefficient scale (divide by 2^n).
inline InfluenceVector to_coefficient_scale(const InfluenceVector& vec) {
  if (vec.mode == InfluenceVector::Mode::sampled) return vec;
  InfluenceVector out = vec;
  out.mode = InfluenceVector::Mode::sampled;
  for (auto& v : out.values) v = std::ldexp(v, -static_cast<int>(vec.n));
  return out;
}

/// Coefficient scale -> edge-count scale (multiply by 2^n).
inline std::vector<double> to_edge_scale(const InfluenceVector& vec) {
  std::vector<double> out = vec.values;
  if (vec.mode == InfluenceVector::Mode::sampled) {
    for (auto& v : out) v = std::ldexp(v, static_cast<int>(vec.n));
  }
  return out;
}

}  // namespace maxcon
