#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maxcon {

/// Largest universe a PointSet can address (one machine word).
inline constexpr std::size_t kMaxPoints = 64;

/// A vertex of the Boolean cube {0,1}^n: bit i set means data point i is
/// included. Positions at or above n are always clear.
class PointSet {
 public:
  constexpr PointSet() = default;

  explicit PointSet(std::size_t n, std::uint64_t bits = 0) : bits_(bits), n_(checked_size(n)) {
    if (n_ < kMaxPoints && (bits_ >> n_) != 0) {
      throw std::invalid_argument("PointSet: bits set beyond universe size");
    }
  }

  static PointSet empty(std::size_t n) { return PointSet(n); }

  static PointSet full(std::size_t n) { return PointSet(n, universe_mask(checked_size(n))); }

  /// Parses a '0'/'1' string; character 0 is bit index 0.
  static PointSet parse(std::string_view s) {
    PointSet x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        x.bits_ |= std::uint64_t{1} << i;
      } else if (s[i] != '0') {
        throw std::invalid_argument("PointSet: expected only '0' and '1' in \"" + std::string(s) + "\"");
      }
    }
    return x;
  }

  static PointSet from_indices(std::size_t n, const std::vector<std::size_t>& idx) {
    PointSet x(n);
    for (auto i : idx) x = x.with(i);
    return x;
  }

  [[nodiscard]] std::string str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
      if (contains(i)) s[i] = '1';
    }
    return s;
  }

  [[nodiscard]] constexpr std::uint64_t bits() const { return bits_; }
  [[nodiscard]] constexpr std::size_t size() const { return n_; }

  /// Cardinality of the subset (the level of the vertex in the cube).
  [[nodiscard]] constexpr std::size_t level() const { return static_cast<std::size_t>(std::popcount(bits_)); }

  [[nodiscard]] constexpr bool contains(std::size_t i) const { return i < n_ && ((bits_ >> i) & 1U) != 0; }

  [[nodiscard]] PointSet flip(std::size_t i) const {
    check_index(i);
    return PointSet(n_, bits_ ^ (std::uint64_t{1} << i), Unchecked{});
  }

  [[nodiscard]] PointSet with(std::size_t i) const {
    check_index(i);
    return PointSet(n_, bits_ | (std::uint64_t{1} << i), Unchecked{});
  }

  [[nodiscard]] PointSet without(std::size_t i) const {
    check_index(i);
    return PointSet(n_, bits_ & ~(std::uint64_t{1} << i), Unchecked{});
  }

  [[nodiscard]] PointSet complement() const { return PointSet(n_, ~bits_ & universe_mask(n_), Unchecked{}); }

  /// Indices of set bits, ascending.
  [[nodiscard]] std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(level());
    for (auto b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend PointSet operator&(const PointSet& a, const PointSet& b) {
    same_universe(a, b);
    return PointSet(a.n_, a.bits_ & b.bits_, Unchecked{});
  }

  friend PointSet operator|(const PointSet& a, const PointSet& b) {
    same_universe(a, b);
    return PointSet(a.n_, a.bits_ | b.bits_, Unchecked{});
  }

  friend constexpr bool operator==(const PointSet&, const PointSet&) = default;

  static constexpr std::uint64_t universe_mask(std::size_t n) {
    return n >= kMaxPoints ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }

  static void same_universe(const PointSet& a, const PointSet& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("PointSet: universe size mismatch");
  }

 private:
  struct Unchecked {};
  constexpr PointSet(std::size_t n, std::uint64_t bits, Unchecked) : bits_(bits), n_(static_cast<std::uint8_t>(n)) {}

  static std::uint8_t checked_size(std::size_t n) {
    if (n > kMaxPoints) throw std::invalid_argument("PointSet: universe larger than 64 points");
    return static_cast<std::uint8_t>(n);
  }

  void check_index(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("PointSet: index " + std::to_string(i) + " out of range");
  }

  std::uint64_t bits_ = 0;
  std::uint8_t n_ = 0;
};

inline std::size_t level(const PointSet& x) { return x.level(); }

inline std::size_t hamming(const PointSet& x, const PointSet& y) {
  PointSet::same_universe(x, y);
  return static_cast<std::size_t>(std::popcount(x.bits() ^ y.bits()));
}

/// True iff x is a subset of z (x lies in the downward shadow of z).
inline bool is_below(const PointSet& x, const PointSet& z) {
  PointSet::same_universe(x, z);
  return (x.bits() & ~z.bits()) == 0;
}

inline PointSet flip(const PointSet& x, std::size_t i) { return x.flip(i); }

}  // namespace maxcon

template <>
struct std::hash<maxcon::PointSet> {
  std::size_t operator()(const maxcon::PointSet& x) const noexcept {
    return std::hash<std::uint64_t>{}(x.bits() * 0x9E3779B97F4A7C15ULL ^ x.size());
  }
};
