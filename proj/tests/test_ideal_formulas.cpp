#include <gtest/gtest.h>

#include "maxcon/builtin_specs.hpp"
#include "maxcon/ideal_formulas.hpp"
#include "test_oracles.hpp"

using namespace maxcon;

namespace {

long as_long(Wide v) { return static_cast<long>(v); }

CellPattern cell(const char* s, std::size_t K) { return CellPattern::parse(s, K); }

}  // namespace

TEST(Binomial, ConventionAndEdges) {
  EXPECT_EQ(as_long(binomial(6, 2)), 15);
  EXPECT_EQ(as_long(binomial(4, 2)), 6);
  EXPECT_EQ(as_long(binomial(3, 5)), 0);
  EXPECT_EQ(as_long(binomial(-1, 0)), 0);
  EXPECT_EQ(to_string(binomial(128, 64)), "23951146041928082866135587776380551750");
  EXPECT_EQ(as_long(upper_tail(5, 2)), 16);
  EXPECT_EQ(as_long(upper_tail(2, 2)), 0);
}

TEST(InfluenceSingle, SingleStructureValues) {
  auto [in, out] = influence_single(7, 2, 5);
  EXPECT_EQ(as_long(in), 9);
  EXPECT_EQ(as_long(out), 31);
  EXPECT_EQ(as_long(influence_single(9, 3, 9).first), 0);
  EXPECT_THROW(influence_single(7, 2, 2), std::invalid_argument);
  EXPECT_THROW(influence_single(7, 2, 8), std::invalid_argument);
}

TEST(InfluenceSingle, MatchesEnumerationAtTen) {
  const IdealSpec spec{10, 2, {PointSet::parse("1101101001")}};
  const auto counts = testkit::brute_force_influence(10, [&](const PointSet& x) {
    return eval_synthetic(spec, x).infeasible;
  });
  auto [in, out] = influence_single(10, 2, 6);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(static_cast<Wide>(counts[i]), spec.upper_zeros[0].contains(i) ? in : out);
  }
}

TEST(InfluenceSingle, AgreesWithSingleCellFormula) {
  CounterRng rng(3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 3 + rng.below(40);
    const std::size_t p = rng.below(n - 1);
    const std::size_t k = p + 1 + rng.below(n - p);
    const StructureSizes sizes{n, p, {k}, {}};
    auto [in, out] = influence_single(n, p, k);
    ASSERT_EQ(in, influence_cell(sizes, cell("1", 1)));
    ASSERT_EQ(out, influence_cell(sizes, cell("0", 1)));
    // inlier strictly below outlier
    ASSERT_LT(in, out);
  }
}

TEST(InfluenceCell, TwoStructureExample) {
  const StructureSizes s{9, 2, {4, 5}, {}};
  EXPECT_EQ(as_long(influence_cell(s, cell("11", 2))), 19);
  EXPECT_EQ(as_long(influence_cell(s, cell("10", 2))), 41);
  EXPECT_EQ(as_long(influence_cell(s, cell("01", 2))), 27);
  EXPECT_EQ(as_long(influence_cell(s, cell("00", 2))), 49);
}

TEST(InfluenceCell, ThreeStructureExample) {
  const StructureSizes s{8, 2, {3, 4, 5}, {}};
  EXPECT_EQ(as_long(influence_cell(s, cell("000", 3))), 43);
  EXPECT_EQ(as_long(influence_cell(s, cell("111", 3))), 11);
  const auto b = *find_builtin("ex3");
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(influence_cell(s, cell_of_point(b.spec, i)), static_cast<Wide>(b.expected[i])) << i;
  }
}

TEST(InfluenceCell, OverlappingExample) {
  const StructureSizes s{8, 2, {4, 5, 5}, {3, 4}};
  EXPECT_EQ(as_long(influence_cell(s, cell("11100", 3))), 10);
  EXPECT_EQ(as_long(influence_cell(s, cell("00011", 3))), 52);
  const auto b = *find_builtin("ex4");
  const auto sizes = sizes_of(b.spec);
  EXPECT_EQ(sizes.ks, s.ks);
  EXPECT_EQ(sizes.alphas.size(), 2u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(influence_cell(sizes, cell_of_point(b.spec, i)), static_cast<Wide>(b.expected[i])) << i;
  }
}

TEST(InfluenceCell, RejectsInconsistentPattern) {
  const StructureSizes s{8, 2, {4, 5, 5}, {3, 4}};
  EXPECT_THROW(influence_cell(s, cell("111", 3)), std::invalid_argument);
  EXPECT_THROW(influence_cell(s, cell("1110", 2)), std::invalid_argument);
}

TEST(CellOfPoint, ReadsMembership) {
  const auto ex2 = find_builtin("ex2")->spec;
  EXPECT_EQ(cell_of_point(ex2, 2).str(), "11");
  EXPECT_EQ(cell_of_point(ex2, 4).str(), "00");
  const auto ex4 = find_builtin("ex4")->spec;
  const auto c = cell_of_point(ex4, 7);
  EXPECT_EQ(c.str(), "00011");
  EXPECT_EQ(as_long(influence_cell(sizes_of(ex4), c)), 52);
  EXPECT_THROW(cell_of_point(ex4, 8), std::out_of_range);
}

TEST(VerifyOrdering, WorkedExamples) {
  const StructureSizes s3{8, 2, {3, 4, 5}, {}};
  std::vector<CellPattern> cells;
  for (const char* p : {"111", "011", "101", "110", "001", "010", "000"}) cells.push_back(cell(p, 3));
  EXPECT_TRUE(verify_ordering(s3, cells));

  const StructureSizes s2{9, 2, {4, 5}, {}};
  const auto check = check_ordering(s2, {cell("11", 2), cell("10", 2), cell("01", 2), cell("00", 2)});
  ASSERT_TRUE(check.sum_identity.has_value());
  EXPECT_TRUE(*check.sum_identity);
  EXPECT_TRUE(check.ok());
}

TEST(VerifyOrdering, DetectsBrokenOrder) {
  // A structure at level 1 <= p moves no influence, so 11 and 10 tie.
  const StructureSizes wrong{9, 2, {4, 1}, {}};
  EXPECT_FALSE(verify_ordering(wrong, {cell("11", 2), cell("10", 2)}));
}

TEST(VerifySpec, ExamplesMatch) {
  for (const auto& b : builtin_specs()) {
    const auto v = verify_spec(b.spec);
    EXPECT_TRUE(v.all_match()) << b.id;
    for (std::size_t i = 0; i < b.spec.n; ++i) EXPECT_EQ(v.points[i].enumeration, b.expected[i]);
  }
}

TEST(VerifySpec, OverlapScoredAsIdealMismatches) {
  const auto v = verify_spec(find_builtin("ex4")->spec, /*assume_ideal=*/true);
  EXPECT_FALSE(v.all_match());
}

TEST(VerifySpec, RandomIdealSpecsMatchEnumeration) {
  CounterRng rng(77);
  for (int t = 0; t < 100; ++t) {
    const auto spec = testkit::random_ideal_spec(rng, 13);
    const auto v = verify_spec(spec);
    ASSERT_TRUE(v.all_match()) << to_string(influence_cell(sizes_of(spec), v.points[0].cell));
    ASSERT_TRUE(check_ordering(sizes_of(spec), occupied_cells(spec)).ok());
  }
}

TEST(VerifySpec, SingleOverlapSpecsMatchEnumeration) {
  CounterRng rng(78);
  for (int t = 0; t < 60; ++t) {
    const auto spec = testkit::random_single_overlap_spec(rng, 13);
    ASSERT_TRUE(verify_spec(spec).all_match());
    ASSERT_TRUE(check_ordering(sizes_of(spec), occupied_cells(spec)).ok());
  }
}
