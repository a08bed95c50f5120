#include <gtest/gtest.h>

#include <set>

#include "flatcover/clustering/exact.hpp"
#include "flatcover/clustering/heuristic.hpp"
#include "flatcover/io/generators.hpp"
#include "support/oracles.hpp"

namespace fc = flatcover;

namespace {

fc::FloatCloud two_lines() {
  fc::FloatCloud c(2);
  for (double y : {0.0, 5.0})
    for (double x : {0.0, 1.0, 2.0}) c.add({x, y});
  return c;
}

std::vector<Eigen::VectorXd> vectors(const fc::FloatCloud& c) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& r : c.records()) out.push_back(fc::as_vector(r));
  return out;
}

}  // namespace

TEST(Partitions, RestrictedGrowthOrder) {
  fc::PartitionIterator it(4, 2);
  std::vector<std::vector<std::size_t>> seen;
  do seen.push_back(it.labels());
  while (it.next());
  const std::vector<std::vector<std::size_t>> want = {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 0, 1, 1},
                                                      {0, 1, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 1, 1, 1}};
  EXPECT_EQ(seen, want);
}

TEST(Partitions, CountsMatchStirling) {
  for (std::size_t n = 1; n <= 9; ++n)
    for (std::size_t k = 1; k <= 4; ++k) {
      fc::PartitionIterator it(n, k);
      unsigned long c = 0;
      do ++c;
      while (it.next());
      EXPECT_EQ(fc::partition_count(n, k), c) << n << " " << k;
    }
  EXPECT_EQ(fc::stirling2(10, 3), 9330);
  EXPECT_EQ(fc::partition_count(8, 2), 128);
}

TEST(Exact, OneClusterIsBestFit) {
  const auto c = fc::gen::uniform_cloud(9, 3, 21);
  for (int r = 0; r < 3; ++r)
    EXPECT_NEAR(fc::solve_exact(c, 1, r).solution.cost, fc::best_fit_flat(c, r).cost, 1e-12);
}

TEST(Exact, TwoPlantedLines) {
  const auto res = fc::solve_exact(two_lines(), 2, 1);
  EXPECT_LE(res.solution.cost, 1e-18);
  std::set<long> ys;
  for (const auto& f : res.solution.flats) ys.insert(std::lround(f.offset()(1)));
  EXPECT_EQ(ys, (std::set<long>{0, 5}));
}

TEST(Exact, MatchesUnprunedEnumeration) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto c = fc::to_float(fc::gen::integer_cloud(8, 2, 10, seed));
    const double want = oracle::brute_force_clustering(vectors(c), 2, 1);
    EXPECT_NEAR(fc::solve_exact(c, 2, 1).solution.cost, want, 1e-9 * std::max(1.0, want)) << seed;
  }
}

TEST(Exact, PruningDoesNotChangeCost) {
  const auto c = fc::gen::uniform_cloud(9, 2, 77);
  fc::ExactOptions off;
  off.prune = false;
  const auto a = fc::solve_exact(c, 3, 1);
  const auto b = fc::solve_exact(c, 3, 1, off);
  EXPECT_NEAR(a.solution.cost, b.solution.cost, 1e-12);
  EXPECT_EQ(b.leaves, fc::partition_count(9, 3));
  EXPECT_LE(a.leaves, b.leaves);
}

TEST(Exact, ResultIsVoronoiConsistent) {
  const auto c = fc::gen::uniform_cloud(8, 2, 5);
  const auto res = fc::solve_exact(c, 2, 1);
  EXPECT_TRUE(fc::is_voronoi_consistent(c, res.solution, 1e-9));
}

TEST(Exact, BudgetDecision) {
  fc::ExactOptions yes, no;
  yes.budget = 1e-9;
  no.budget = -1.0;
  EXPECT_TRUE(*fc::solve_exact(two_lines(), 2, 1, yes).within_budget);
  EXPECT_FALSE(*fc::solve_exact(two_lines(), 2, 1, no).within_budget);
}

TEST(Exact, GuardTrips) {
  fc::ExactOptions opt;
  opt.guard = 100;
  EXPECT_THROW(fc::solve_exact(fc::gen::uniform_cloud(9, 2, 1), 2, 1, opt), fc::GuardError);
}

TEST(Exact, BadArguments) {
  const auto c = two_lines();
  EXPECT_THROW(fc::solve_exact(c, 0, 1), std::invalid_argument);
  EXPECT_THROW(fc::solve_exact(c, 2, 2), std::invalid_argument);
}

TEST(Heuristic, PlantedZeroCost) {
  fc::HeuristicConfig cfg;
  cfg.restarts = 20;
  EXPECT_LE(fc::solve_heuristic(two_lines(), 2, 1, cfg).cost, 1e-18);
}

TEST(Heuristic, NeverBelowExact) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto c = fc::gen::uniform_cloud(8, 2, 300 + s);
    const double ex = fc::solve_exact(c, 2, 1).solution.cost;
    EXPECT_GE(fc::solve_heuristic(c, 2, 1).cost, ex - 1e-9 * ex);
  }
}

TEST(Heuristic, EachPointItsOwnCentroid) {
  const auto c = fc::gen::uniform_cloud(5, 2, 9);
  fc::HeuristicConfig cfg;
  cfg.restarts = 5;
  EXPECT_LE(fc::solve_heuristic(c, 5, 0, cfg).cost, 1e-24);
}

TEST(Heuristic, DeterministicForSeed) {
  const auto c = fc::gen::uniform_cloud(30, 2, 12);
  fc::HeuristicConfig cfg;
  cfg.rng_seed = 99;
  const auto a = fc::solve_heuristic(c, 3, 1, cfg), b = fc::solve_heuristic(c, 3, 1, cfg);
  EXPECT_EQ(a.cost, b.cost);
  EXPECT_EQ(a.assignment, b.assignment);
}

TEST(Heuristic, FixedPointIsConsistent) {
  const auto c = fc::gen::uniform_cloud(40, 2, 13);
  fc::HeuristicConfig cfg;
  cfg.max_iter = 1000;
  EXPECT_TRUE(fc::is_voronoi_consistent(c, fc::solve_heuristic(c, 3, 1, cfg), 1e-9));
}

TEST(Heuristic, TraceNonincreasing) {
  const auto c = fc::gen::uniform_cloud(40, 2, 14);
  fc::HeuristicConfig cfg;
  const auto run = fc::heuristic_restart(c, 3, 1, cfg, 0);
  for (std::size_t i = 1; i < run.trace.size(); ++i) EXPECT_LE(run.trace[i], run.trace[i - 1] * (1 + 1e-12));
}

TEST(Voronoi, DetectsMisassignment) {
  const auto c = two_lines();
  auto sol = fc::solve_exact(c, 2, 1).solution;
  ASSERT_TRUE(fc::is_voronoi_consistent(c, sol, 1e-9));
  sol.assignment[0] = 1 - sol.assignment[0];
  EXPECT_FALSE(fc::is_voronoi_consistent(c, sol, 1e-9));
}

TEST(ConsistentPartitions, CollinearTriple) {
  fc::FloatCloud c(2);
  for (double x : {0.0, 1.0, 3.0}) c.add({x, 2 * x});
  EXPECT_EQ(fc::count_consistent_partitions(c, 1, 1), 1u);
}

TEST(ConsistentPartitions, OneDimensionalBrute) {
  const std::vector<double> xs = {0.0, 1.3, 4.1, 9.7};
  fc::FloatCloud c(1);
  for (double x : xs) c.add({x});
  // Item 0 stays in block 0; the other labels range over both blocks.
  std::uint64_t want = 1;  // the single block is always reproduced
  for (unsigned mask = 1; mask < 8; ++mask) {
    double s[2] = {0, 0}, n[2] = {0, 0};
    std::vector<int> lab{0};
    for (int i = 1; i < 4; ++i) lab.push_back(mask >> (i - 1) & 1);
    for (int i = 0; i < 4; ++i) s[lab[i]] += xs[i], n[lab[i]] += 1;
    const double m0 = s[0] / n[0], m1 = s[1] / n[1];
    bool same = true;
    for (int i = 0; i < 4; ++i) {
      const double d0 = (xs[i] - m0) * (xs[i] - m0), d1 = (xs[i] - m1) * (xs[i] - m1);
      same = same && (d1 < d0 ? 1 : 0) == lab[i];
    }
    want += same;
  }
  EXPECT_EQ(fc::count_consistent_partitions(c, 2, 0), want);
}

TEST(ConsistentPartitions, FrozenGrowthSeries) {
  const std::uint64_t want[] = {18, 12, 11, 12};
  for (std::size_t n = 6; n <= 9; ++n)
    EXPECT_EQ(fc::count_consistent_partitions(fc::gen::uniform_cloud(n, 2, 11000 + n), 2, 1), want[n - 6]) << n;
}

TEST(Heuristic, ThreadCountDoesNotMatter) {
  const auto c = fc::gen::uniform_cloud(30, 2, 15);
  fc::HeuristicConfig one, many;
  many.threads = 3;
  const auto a = fc::solve_heuristic(c, 3, 1, one), b = fc::solve_heuristic(c, 3, 1, many);
  EXPECT_EQ(a.cost, b.cost);
  EXPECT_EQ(a.assignment, b.assignment);
}
