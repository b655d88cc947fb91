#include "pumatune/moea/sorting.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pumatune/errors.hpp"
#include "sort_oracle.hpp"

namespace pumatune::moea {
namespace {

using Objectives = std::vector<std::vector<double>>;

TEST(Dominates, Examples) {
  const std::vector<double> a{1, 2}, b{2, 3}, c{1, 3}, d{2, 1};
  EXPECT_TRUE(dominates(a, b));
  EXPECT_FALSE(dominates(b, a));
  EXPECT_TRUE(dominates(a, c));
  EXPECT_FALSE(dominates(a, d));
  EXPECT_FALSE(dominates(d, a));
  EXPECT_FALSE(dominates(a, a));
}

TEST(Dominates, RejectsLengthMismatch) {
  const std::vector<double> a{1, 2}, b{1, 2, 3};
  EXPECT_THROW(dominates(a, b), InvalidInput);
}

TEST(NondominatedSort, SmallExample) {
  const Objectives f{{1, 2}, {2, 1}, {3, 3}};
  const auto fronts = nondominated_sort(f);
  ASSERT_EQ(fronts.size(), 2u);
  EXPECT_EQ(fronts[0], (Front{0, 1}));
  EXPECT_EQ(fronts[1], (Front{2}));
}

TEST(NondominatedSort, IdenticalPointsShareTheFirstFront) {
  const Objectives f(7, std::vector<double>{0.5, 0.5, 2.0});
  const auto fronts = nondominated_sort(f);
  ASSERT_EQ(fronts.size(), 1u);
  EXPECT_EQ(fronts[0].size(), 7u);
}

TEST(NondominatedSort, ChainGivesOneFrontPerPoint) {
  Objectives f;
  for (int i = 4; i >= 0; --i) f.push_back({double(i), double(i)});
  const auto fronts = nondominated_sort(f);
  ASSERT_EQ(fronts.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(fronts[k], (Front{4 - k}));
}

TEST(NondominatedSort, MatchesPeelingOnRandomPopulations) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 50, m = 1 + rng() % 3;
    Objectives f(n, std::vector<double>(m));
    // coarse grid values force plenty of ties and weak dominance
    for (auto& row : f)
      for (double& v : row) v = static_cast<double>(rng() % 6);
    const auto fronts = nondominated_sort(f);
    ASSERT_EQ(fronts, testing::peel_fronts(f)) << "trial " << trial;
    std::size_t total = 0;
    for (const auto& fr : fronts) total += fr.size();
    EXPECT_EQ(total, n);
  }
}

TEST(CrowdingDistance, SmallFrontsAreAllBoundary) {
  const Objectives f{{1, 2}, {2, 1}};
  const Front one{0}, two{0, 1};
  EXPECT_EQ(crowding_distance(one, f), (std::vector<double>{kInfiniteCrowding}));
  EXPECT_EQ(crowding_distance(two, f), (std::vector<double>{kInfiniteCrowding, kInfiniteCrowding}));
}

TEST(CrowdingDistance, SingleObjectiveInterior) {
  const Objectives f{{1}, {2}, {4}};
  const Front front{0, 1, 2};
  const auto d = crowding_distance(front, f);
  EXPECT_EQ(d[0], kInfiniteCrowding);
  EXPECT_DOUBLE_EQ(d[1], 1.0);  // (4 - 1) / (4 - 1)
  EXPECT_EQ(d[2], kInfiniteCrowding);
}

TEST(CrowdingDistance, TwoObjectiveInterior) {
  const Objectives f{{4, 1}, {1, 4}, {2, 2}};
  const Front front{0, 1, 2};
  const auto d = crowding_distance(front, f);
  EXPECT_EQ(d[0], kInfiniteCrowding);
  EXPECT_EQ(d[1], kInfiniteCrowding);
  EXPECT_DOUBLE_EQ(d[2], 2.0);  // 3/3 on each objective
}

TEST(CrowdingDistance, FlatObjectiveContributesNothing) {
  const Objectives f{{1, 5}, {2, 5}, {4, 5}, {7, 5}};
  const Front front{0, 1, 2, 3};
  const auto d = crowding_distance(front, f);
  EXPECT_DOUBLE_EQ(d[1], 3.0 / 6.0);
  EXPECT_DOUBLE_EQ(d[2], 5.0 / 6.0);
}

TEST(CrowdingDistance, OrderFollowsFrontNotObjectives) {
  const Objectives f{{2, 2}, {99, 99}, {4, 1}, {1, 4}};
  const Front front{3, 0, 2};
  const auto d = crowding_distance(front, f);
  EXPECT_EQ(d[0], kInfiniteCrowding);
  EXPECT_DOUBLE_EQ(d[1], 2.0);
  EXPECT_EQ(d[2], kInfiniteCrowding);
}

TEST(AssignRankAndCrowding, StoresOneBasedRanks) {
  std::vector<Individual> pop(3);
  pop[0].objectives = {3, 3};
  pop[1].objectives = {1, 2};
  pop[2].objectives = {2, 1};
  const auto fronts = assign_rank_and_crowding(pop);
  EXPECT_EQ(fronts.size(), 2u);
  EXPECT_EQ(pop[0].rank, 2);
  EXPECT_EQ(pop[1].rank, 1);
  EXPECT_EQ(pop[2].rank, 1);
  EXPECT_EQ(pop[0].crowding, kInfiniteCrowding);
}

TEST(CrowdedCompare, LowerRankWins) {
  Individual a, b;
  a.rank = 1;
  a.crowding = 0.1;
  b.rank = 2;
  b.crowding = kInfiniteCrowding;
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    EXPECT_TRUE(crowded_compare(a, b, rng));
    EXPECT_FALSE(crowded_compare(b, a, rng));
  }
  EXPECT_TRUE(crowded_better(a, b));
}

TEST(CrowdedCompare, LargerCrowdingWinsWithinRank) {
  Individual a, b;
  a.rank = b.rank = 3;
  a.crowding = 0.7;
  b.crowding = 0.2;
  Rng rng(2);
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(crowded_compare(a, b, rng));
  EXPECT_FALSE(crowded_better(b, a));
}

TEST(CrowdedCompare, ExactTiesAreFair) {
  Individual a, b;
  a.rank = b.rank = 1;
  a.crowding = b.crowding = kInfiniteCrowding;
  Rng rng(3);
  int wins = 0;
  constexpr int kTrials = 10000;
  for (int i = 0; i < kTrials; ++i) wins += crowded_compare(a, b, rng);
  EXPECT_NEAR(wins / double(kTrials), 0.5, 0.05);
}

}  // namespace
}  // namespace pumatune::moea
