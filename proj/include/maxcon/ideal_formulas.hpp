#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxcon/influence.hpp"
#include "maxcon/oracle.hpp"
#include "maxcon/point_set.hpp"

namespace maxcon {

using Wide = __int128;

/// C(n, k) from a 128-bit Pascal triangle; zero outside 0 <= k <= n.
inline Wide binomial(long n, long k) {
  constexpr long kRows = 130;
  static const auto table = [] {
    std::vector<std::array<Wide, kRows>> t(kRows);
    for (long r = 0; r < kRows; ++r) {
      t[r].fill(0);
      t[r][0] = 1;
      for (long c = 1; c <= r; ++c) {
        Wide sum;
        if (__builtin_add_overflow(t[r - 1][c - 1], t[r - 1][c], &sum)) {
          throw std::overflow_error("binomial: 128-bit overflow");
        }
        t[r][c] = sum;
      }
    }
    return t;
  }();
  if (n < 0 || k < 0 || k > n) return 0;
  if (n >= kRows) throw std::overflow_error("binomial: n too large");
  return table[n][k];
}

/// sum_{l=p+1}^{k} C(k, l); empty when k <= p.
inline Wide upper_tail(long k, long p) {
  Wide s = 0;
  for (long l = p + 1; l <= k; ++l) s += binomial(k, l);
  return s;
}

inline std::string to_string(Wide v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string s;
  for (auto u = neg ? -v : v; u > 0; u /= 10) s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
  return neg ? "-" + s : s;
}

/// Membership word of a point: the first K bits are 1 for "inlier to upper
/// zero a"; the last M bits are 1 for "outside pseudo upper zero b".
struct CellPattern {
  std::vector<std::uint8_t> bits;
  std::size_t K = 0;
  std::size_t M = 0;

  static CellPattern parse(std::string_view s, std::size_t K) {
    if (K == 0 || K > s.size()) throw std::invalid_argument("CellPattern: K must be in [1, length]");
    CellPattern c{{}, K, s.size() - K};
    for (char ch : s) {
      if (ch != '0' && ch != '1') throw std::invalid_argument("CellPattern: expected '0'/'1'");
      c.bits.push_back(ch == '1');
    }
    return c;
  }

  [[nodiscard]] std::string str() const {
    std::string s;
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
  }

  /// Componentwise >= on the full word.
  [[nodiscard]] bool dominates(const CellPattern& o) const {
    for (std::size_t a = 0; a < bits.size(); ++a) {
      if (bits[a] < o.bits[a]) return false;
    }
    return true;
  }

  friend bool operator==(const CellPattern&, const CellPattern&) = default;
};

struct StructureSizes {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<std::size_t> ks;
  std::vector<std::size_t> alphas;
};

inline StructureSizes sizes_of(const IdealSpec& spec) {
  StructureSizes s{spec.n, spec.p, {}, {}};
  for (const auto& z : spec.upper_zeros) s.ks.push_back(z.level());
  for (const auto& a : pseudo_upper_zeros(spec)) s.alphas.push_back(a.level());
  return s;
}

/// Scaled (x 2^n) influences of an inlier and an outlier for a single upper
/// zero at level k.
inline std::pair<Wide, Wide> influence_single(std::size_t n, std::size_t p, std::size_t k) {
  if (!(p < k && k <= n)) throw std::invalid_argument("influence_single: requires p < k <= n");
  const auto N = static_cast<long>(n), P = static_cast<long>(p), Kl = static_cast<long>(k);
  const Wide base = binomial(N - 1, P);
  return {base - binomial(Kl - 1, P), base + upper_tail(Kl, P)};
}

/// Scaled influence shared by every point whose membership word is `pattern`.
inline Wide influence_cell(const StructureSizes& sizes, const CellPattern& pattern) {
  const std::size_t K = sizes.ks.size();
  const std::size_t M = sizes.alphas.size();
  if (K == 0 || pattern.K != K || pattern.M != M || pattern.bits.size() != K + M) {
    throw std::invalid_argument("influence_cell: pattern length does not match structure sizes");
  }
  const auto P = static_cast<long>(sizes.p);
  Wide v = binomial(static_cast<long>(sizes.n) - 1, P);
  for (std::size_t a = 0; a < K; ++a) {
    const auto k = static_cast<long>(sizes.ks[a]);
    v += pattern.bits[a] ? -binomial(k - 1, P) : upper_tail(k, P);
  }
  for (std::size_t b = 0; b < M; ++b) {
    const auto alpha = static_cast<long>(sizes.alphas[b]);
    v += pattern.bits[K + b] ? -upper_tail(alpha, P) : binomial(alpha - 1, P);
  }
  return v;
}

inline CellPattern cell_of_point(const IdealSpec& spec, const std::vector<PointSet>& pseudo, std::size_t i) {
  if (i >= spec.n) throw std::out_of_range("cell_of_point: index out of range");
  CellPattern c{{}, spec.upper_zeros.size(), pseudo.size()};
  for (const auto& z : spec.upper_zeros) c.bits.push_back(z.contains(i) ? 1 : 0);
  for (const auto& a : pseudo) c.bits.push_back(a.contains(i) ? 0 : 1);
  return c;
}

inline CellPattern cell_of_point(const IdealSpec& spec, std::size_t i) {
  return cell_of_point(spec, pseudo_upper_zeros(spec), i);
}

struct OrderingCheck {
  bool strictly_decreasing = true;
  /// Points outlying every structure beat every point inlying some structure.
  bool outliers_on_top = true;
  /// f(S11) + f(S00) == f(S10) + f(S01); only evaluated for K = 2, M = 0 with
  /// all four cells present.
  std::optional<bool> sum_identity;

  [[nodiscard]] bool ok() const { return strictly_decreasing && outliers_on_top && sum_identity.value_or(true); }
};

/// Checks the ordering corollaries over the given non-empty cells:
/// dominance on the membership word implies strictly smaller influence.
inline OrderingCheck check_ordering(const StructureSizes& sizes, const std::vector<CellPattern>& cells) {
  OrderingCheck out;
  std::vector<Wide> values;
  values.reserve(cells.size());
  for (const auto& c : cells) values.push_back(influence_cell(sizes, c));

  const auto all_outlier = [](const CellPattern& c) {
    for (std::size_t a = 0; a < c.K; ++a) {
      if (c.bits[a]) return false;
    }
    return true;
  };
  for (std::size_t x = 0; x < cells.size(); ++x) {
    for (std::size_t y = 0; y < cells.size(); ++y) {
      if (cells[x] == cells[y]) continue;
      if (cells[x].dominates(cells[y]) && !(values[x] < values[y])) out.strictly_decreasing = false;
      if (all_outlier(cells[x]) && !all_outlier(cells[y]) && !(values[x] > values[y])) out.outliers_on_top = false;
    }
  }
  if (sizes.ks.size() == 2 && sizes.alphas.empty()) {
    std::array<std::optional<Wide>, 4> v;  // index = 2*j1 + j2
    for (std::size_t c = 0; c < cells.size(); ++c) v[2 * cells[c].bits[0] + cells[c].bits[1]] = values[c];
    if (v[0] && v[1] && v[2] && v[3]) out.sum_identity = (*v[3] + *v[0] == *v[2] + *v[1]);
  }
  return out;
}

inline bool verify_ordering(const StructureSizes& sizes, const std::vector<CellPattern>& cells) {
  return check_ordering(sizes, cells).ok();
}

/// Distinct membership words that actually occur among the spec's points.
inline std::vector<CellPattern> occupied_cells(const IdealSpec& spec) {
  const auto pseudo = pseudo_upper_zeros(spec);
  std::vector<CellPattern> cells;
  for (std::size_t i = 0; i < spec.n; ++i) {
    auto c = cell_of_point(spec, pseudo, i);
    if (std::find(cells.begin(), cells.end(), c) == cells.end()) cells.push_back(std::move(c));
  }
  return cells;
}

struct PointVerification {
  CellPattern cell;
  Wide formula = 0;
  std::uint64_t enumeration = 0;
  bool match = false;
};

struct SpecVerification {
  IdealSpec spec;
  bool ideal = true;
  std::vector<PointSet> pseudo;
  std::vector<PointVerification> points;

  [[nodiscard]] bool all_match() const {
    return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.match; });
  }
};

/// Compares closed-form cell influences with cube enumeration for every point.
/// With `assume_ideal` the pseudo upper zeros are ignored, i.e. the spec is
/// scored with the disjoint-structure formulas whatever its overlaps.
inline SpecVerification verify_spec(const IdealSpec& spec, bool assume_ideal = false) {
  spec.validate();
  if (spec.upper_zeros.empty()) throw std::invalid_argument("verify_spec: no upper zeros declared");
  SpecVerification out{spec, spec.is_ideal(), {}, {}};
  if (!assume_ideal) out.pseudo = pseudo_upper_zeros(spec);
  StructureSizes sizes{spec.n, spec.p, {}, {}};
  for (const auto& z : spec.upper_zeros) sizes.ks.push_back(z.level());
  for (const auto& a : out.pseudo) sizes.alphas.push_back(a.level());
  const SyntheticOracle oracle(spec);
  const auto counts = boundary_edge_counts(truth_table(oracle, spec.n), spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    PointVerification pv;
    pv.cell = cell_of_point(spec, out.pseudo, i);
    pv.formula = influence_cell(sizes, pv.cell);
    pv.enumeration = counts[i];
    pv.match = pv.formula == static_cast<Wide>(counts[i]);
    out.points.push_back(std::move(pv));
  }
  return out;
}

}  // namespace maxcon
