#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxcon/oracle.hpp"

namespace maxcon {

/// Worked four-instance set used by `verify-ideal`: a single structure, two
/// and three disjoint structures, and three overlapping structures. Each
/// comes with its known scaled influence vector.
struct BuiltinSpec {
  std::string id;
  IdealSpec spec;
  std::vector<std::uint64_t> expected;
};

inline const std::vector<BuiltinSpec>& builtin_specs() {
  static const std::vector<BuiltinSpec> specs = [] {
    const auto make = [](std::string id, std::size_t n, std::size_t p, std::vector<std::string> zeros,
                         std::vector<std::uint64_t> expected) {
      BuiltinSpec b{std::move(id), {n, p, {}}, std::move(expected)};
      for (const auto& z : zeros) b.spec.upper_zeros.push_back(PointSet::parse(z));
      return b;
    };
    return std::vector<BuiltinSpec>{
        make("ex1", 7, 2, {"1010111"}, {9, 31, 9, 31, 9, 9, 9}),
        make("ex2", 9, 2, {"111100000", "001001111"}, {41, 41, 19, 41, 49, 27, 27, 27, 27}),
        make("ex3", 8, 2, {"10010100", "11110000", "01011101"}, {33, 13, 35, 11, 21, 19, 43, 21}),
        make("ex4", 8, 2, {"11001100", "10101110", "10110110"}, {10, 44, 16, 30, 24, 10, 16, 52}),
    };
  }();
  return specs;
}

inline std::optional<BuiltinSpec> find_builtin(const std::string& id) {
  for (const auto& b : builtin_specs()) {
    if (b.id == id) return b;
  }
  return std::nullopt;
}

}  // namespace maxcon
