#include <gtest/gtest.h>

#include "maxcon/builtin_specs.hpp"
#include "maxcon/geometry.hpp"
#include "maxcon/solvers.hpp"
#include "test_oracles.hpp"

using namespace maxcon;

namespace {

template <class O>
bool one_maximal(const O& oracle, const PointSet& x) {
  if (oracle.evaluate(x).infeasible) return false;
  for (auto z : x.complement().indices()) {
    if (!oracle.evaluate(x.with(z)).infeasible) return false;
  }
  return true;
}

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

SampleBudget budget(std::size_t m, std::uint64_t seed) {
  SampleBudget b;
  b.m = m;
  b.seed = seed;
  return b;
}

}  // namespace

TEST(Method, ParseAndPrint) {
  for (auto m : {Method::max, Method::linf, Method::exact, Method::greedy}) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_THROW(parse_method("astar"), std::invalid_argument);
}

TEST(LocalExpansion, FixpointAndGrowth) {
  const SyntheticOracle o(find_builtin("ex1")->spec);
  const auto z = PointSet::parse("1010111");
  EXPECT_EQ(local_expansion(o, z), z);
  EXPECT_EQ(local_expansion(o, PointSet::parse("0010101")), z);
  EXPECT_THROW(local_expansion(o, PointSet::parse("1100100")), std::invalid_argument);

  const GeometricOracle clean(gen_synthetic(12, 0, 2, 4));
  EXPECT_EQ(local_expansion(clean, PointSet::empty(12)), PointSet::full(12));
}

TEST(LocalExpansion, ScansInAscendingOrder) {
  // From the empty set on ex2 the first feasible additions are 0,1,2 and
  // then 3, which commits to the smaller structure.
  const SyntheticOracle o(find_builtin("ex2")->spec);
  EXPECT_EQ(local_expansion(o, PointSet::empty(9)).str(), "111100000");
}

TEST(LocalExpansion, SmallStartCanCommitToAnOutlier) {
  // Any set of at most p points is feasible: from the empty set the scan takes
  // 0 and then the outlier 1, after which nothing else fits.
  const SyntheticOracle o(find_builtin("ex1")->spec);
  EXPECT_EQ(local_expansion(o, PointSet::empty(7)).str(), "1100000");
  EXPECT_EQ(local_expansion(o, PointSet::parse("0010000")).str(), "1010111");
}

TEST(BmfMaxcon, OutlierFreeDataStopsAtTop) {
  const GeometricOracle o(gen_synthetic(20, 0, 3, 8));
  for (auto m : {Method::max, Method::linf}) {
    const auto rep = bmf_maxcon(o, 20, m, budget(100, 1));
    EXPECT_EQ(rep.solution, PointSet::full(20));
    EXPECT_EQ(rep.iterations, 0u);
    EXPECT_EQ(rep.termination_queries, 1u);
  }
}

TEST(BmfMaxcon, SingleStructureRemovesOnlyOutliers) {
  const SyntheticOracle o(find_builtin("ex1")->spec);
  int success = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto rep = bmf_maxcon(o, 7, Method::max, budget(2000, seed));
    bool ok = rep.solution.str() == "1010111";
    for (auto r : rep.removed_sequence) ok = ok && (r == 1 || r == 3);
    success += ok ? 1 : 0;
    ASSERT_EQ(rep.iterations, rep.removed_sequence.size());
  }
  EXPECT_EQ(success, 100);
}

TEST(BmfMaxcon, LinfNeedsBasis) {
  const SyntheticOracle o(find_builtin("ex1")->spec);
  EXPECT_THROW(bmf_maxcon(o, 7, Method::linf, budget(100, 1)), std::invalid_argument);
  EXPECT_THROW(bmf_maxcon(o, 7, Method::exact, budget(100, 1)), std::invalid_argument);
  const MinimalInfeasibleBasis wrapped(o);
  const auto rep = bmf_maxcon(wrapped, 7, Method::linf, budget(500, 1));
  EXPECT_TRUE(one_maximal(o, rep.solution));
}

TEST(BmfMaxcon, ReportInvariantsAndDeterminism) {
  const auto d = gen_synthetic(20, 4, 3, 17);
  const GeometricOracle o(d);
  for (auto m : {Method::max, Method::linf}) {
    const auto a = bmf_maxcon(o, 20, m, budget(200, 5));
    const auto b = bmf_maxcon(o, 20, m, budget(200, 5));
    EXPECT_EQ(a.solution, b.solution);
    EXPECT_EQ(a.removed_sequence, b.removed_sequence);
    EXPECT_EQ(a.oracle_queries, b.oracle_queries);
    EXPECT_EQ(a.iterations, a.removed_sequence.size());
    EXPECT_EQ(a.consensus_size, a.solution.level());
    EXPECT_EQ(a.termination_queries, a.iterations + 1);
    EXPECT_LE(a.termination_queries + a.expansion_queries, a.oracle_queries);
    EXPECT_TRUE(one_maximal(o, a.solution));
  }
}

TEST(BmfMaxcon, StaleInfluencesStillTerminate) {
  const GeometricOracle o(gen_synthetic(20, 4, 2, 23));
  BmfOptions opts;
  opts.reestimate = false;
  const auto rep = bmf_maxcon(o, 20, Method::max, budget(200, 1), opts);
  EXPECT_TRUE(one_maximal(o, rep.solution));
}

TEST(BmfMaxcon, DetectsNonMonotoneOracle) {
  // Everything infeasible, including the empty set.
  const FunctionOracle o(5, 1, [](const PointSet&) { return true; });
  EXPECT_THROW(bmf_maxcon(o, 5, Method::max, budget(20, 1)), NonMonotoneError);
}

TEST(ExactMaxcon, SmallCube) {
  const FunctionOracle f(4, 1, [](const PointSet& x) {
    if (x.level() <= 1) return false;
    return !(is_below(x, PointSet::parse("1110")) || is_below(x, PointSet::parse("0101")));
  });
  const MinimalInfeasibleBasis o(f);
  const auto rep = exact_maxcon(o, 4);
  EXPECT_EQ(rep.solution.str(), "1110");
  EXPECT_EQ(rep.iterations, 1u);
  EXPECT_EQ(rep.removed_sequence, std::vector<std::size_t>{3});
}

TEST(ExactMaxcon, OutlierFreeAtDepthZero) {
  const GeometricOracle o(gen_synthetic(15, 0, 2, 2));
  const auto rep = exact_maxcon(o, 15);
  EXPECT_EQ(rep.solution, PointSet::full(15));
  EXPECT_EQ(rep.iterations, 0u);
}

TEST(ExactMaxcon, MatchesExhaustiveSearch) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GeometricOracle o(gen_synthetic(12, 3, 2, seed));
    const auto rep = exact_maxcon(o, 12);
    const auto best = testkit::exhaustive_maxcon_size(12, [&](const PointSet& x) { return o.evaluate(x).infeasible; });
    EXPECT_EQ(rep.consensus_size, best) << seed;
    EXPECT_FALSE(o.evaluate(rep.solution).infeasible);
  }
}

TEST(ExactMaxcon, SyntheticSpecsMatchExhaustive) {
  for (const auto& b : builtin_specs()) {
    const SyntheticOracle s(b.spec);
    const MinimalInfeasibleBasis o(s);
    const auto best = testkit::exhaustive_maxcon_size(b.spec.n, [&](const PointSet& x) { return s.evaluate(x).infeasible; });
    EXPECT_EQ(exact_maxcon(o, b.spec.n).consensus_size, best) << b.id;
  }
}

TEST(ExactMaxcon, ResourceLimitCarriesPartialBest) {
  const GeometricOracle o(gen_synthetic(30, 8, 4, 3));
  ExactLimits lim;
  lim.max_nodes = 10;
  try {
    (void)exact_maxcon(o, 30, lim);
    FAIL() << "expected a resource limit";
  } catch (const ResourceLimitError& e) {
    EXPECT_TRUE(e.partial().partial);
    EXPECT_TRUE(one_maximal(o, e.partial().solution));
  }
}

TEST(ExactMaxcon, RequiresBasis) {
  const SyntheticOracle o(find_builtin("ex1")->spec);
  EXPECT_THROW(exact_maxcon(o, 7), std::invalid_argument);
}

TEST(GreedyMaxcon, SingleStructureDependsOnFirstPicks) {
  // Every set of at most p points is feasible, so an outlier among the first
  // p picks blocks all later additions; otherwise greedy reaches the upper zero.
  const SyntheticOracle o(find_builtin("ex1")->spec);
  const auto z = PointSet::parse("1010111");
  CounterRng rng(4);
  std::size_t reached = 0;
  for (int t = 0; t < 100; ++t) {
    auto order = identity(7);
    for (std::size_t i = 7; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const auto g = greedy_maxcon(o, 7, order);
    if (z.contains(order[0]) && z.contains(order[1])) {
      EXPECT_EQ(g.solution, z);
      ++reached;
    } else {
      EXPECT_EQ(g.consensus_size, 2u);
    }
    EXPECT_TRUE(one_maximal(o, g.solution));
  }
  EXPECT_GT(reached, 0u);
}

TEST(GreedyMaxcon, TwoStructuresCanTrapGreedy) {
  const SyntheticOracle s(find_builtin("ex2")->spec);
  const MinimalInfeasibleBasis o(s);
  const auto g = greedy_maxcon(s, 9, identity(9));
  EXPECT_EQ(g.consensus_size, 4u);
  EXPECT_EQ(exact_maxcon(o, 9).consensus_size, 5u);
  EXPECT_TRUE(one_maximal(s, g.solution));
}

TEST(GreedyMaxcon, OutlierFreeAndValidation) {
  const GeometricOracle o(gen_synthetic(10, 0, 2, 6));
  EXPECT_EQ(greedy_maxcon(o, 10, identity(10)).solution, PointSet::full(10));
  EXPECT_THROW(greedy_maxcon(o, 10, identity(9)), std::invalid_argument);
  auto dup = identity(10);
  dup[3] = 4;
  EXPECT_THROW(greedy_maxcon(o, 10, dup), std::invalid_argument);
}

TEST(Solvers, ExactDominatesHeuristics) {
  CounterRng rng(12);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const GeometricOracle o(gen_synthetic(16, 4, 2, 700 + seed));
    const auto exact = exact_maxcon(o, 16);
    auto order = identity(16);
    for (std::size_t i = 16; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const auto greedy = greedy_maxcon(o, 16, order);
    EXPECT_TRUE(one_maximal(o, greedy.solution));
    for (auto m : {Method::max, Method::linf}) {
      const auto bmf = bmf_maxcon(o, 16, m, budget(300, seed));
      EXPECT_GE(exact.consensus_size, bmf.consensus_size);
      EXPECT_TRUE(one_maximal(o, bmf.solution));
    }
    EXPECT_GE(exact.consensus_size, greedy.consensus_size);
  }
}

TEST(Solvers, IdealSingleStructureRemovesExactlyTheOutliers) {
  CounterRng rng(44);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 10 + rng.below(5);
    const std::size_t k = n - 1 - rng.below(4);
    const IdealSpec spec{n, 2, {testkit::random_subset(rng, n, k)}};
    const SyntheticOracle o(spec);
    SampleBudget b = budget(2000, static_cast<std::uint64_t>(t));
    b.q = default_q(2, n);
    const auto rep = bmf_maxcon(o, n, Method::max, b);
    EXPECT_EQ(rep.iterations, n - k);
    EXPECT_EQ(rep.solution, spec.upper_zeros[0]);
  }
}
