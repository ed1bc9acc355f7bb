// Copyright 2026 The rdc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rdc/setcover.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "rdc/error.h"

namespace rdc::setcover {
namespace {

CoverInstance Make(int num_topics, std::vector<std::vector<int>> sets,
                   std::vector<int> target) {
  CoverInstance c;
  c.num_topics = num_topics;
  c.sets = std::move(sets);
  c.target = std::move(target);
  return c;
}

CoverInstance Triangle() { return Make(3, {{0, 1}, {1, 2}, {0, 2}}, {0, 1, 2}); }
CoverInstance Dominating() { return Make(2, {{0}, {1}, {0, 1}}, {0, 1}); }

// Smallest cover by trying every subset of sets.
int SubsetOracle(const CoverInstance& c) {
  const int m = c.num_sets();
  int best = m + 1;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<char> hit(c.num_topics, 0);
    for (int s = 0; s < m; ++s) {
      if (mask >> s & 1u) {
        for (int e : c.sets[s]) hit[e] = 1;
      }
    }
    bool ok = true;
    for (int e : c.target) ok = ok && hit[e];
    if (ok) best = std::min(best, __builtin_popcount(mask));
  }
  return best;
}

CoverInstance RandomInstance(std::mt19937_64& rng, int max_sets) {
  std::uniform_int_distribution<int> sets_dist(1, max_sets);
  std::uniform_int_distribution<int> topics_dist(1, 10);
  std::bernoulli_distribution coin(0.3);
  CoverInstance c;
  c.num_topics = topics_dist(rng);
  c.sets.resize(sets_dist(rng));
  for (auto& set : c.sets) {
    for (int e = 0; e < c.num_topics; ++e) {
      if (coin(rng)) set.push_back(e);
    }
  }
  // Patch uncovered topics into a random set.
  for (int e = 0; e < c.num_topics; ++e) {
    bool seen = false;
    for (const auto& set : c.sets) seen = seen || std::count(set.begin(), set.end(), e);
    if (!seen) {
      auto& set = c.sets[rng() % c.sets.size()];
      set.insert(std::upper_bound(set.begin(), set.end(), e), e);
    }
    if (coin(rng) || coin(rng)) c.target.push_back(e);
  }
  return c;
}

TEST(SetCoverTest, LpValues) {
  EXPECT_NEAR(CoverLpValue(Dominating()), 1.0, 1e-9);
  EXPECT_NEAR(CoverLpValue(Triangle()), 1.5, 1e-9);
  EXPECT_EQ(CoverLpValue(Make(2, {{0}, {1}}, {})), 0.0);
}

TEST(SetCoverTest, UncoveredTargetIsInfeasible) {
  try {
    CoverLpValue(Make(3, {{0}, {1}}, {0, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
  EXPECT_THROW(GreedyCover(Make(3, {{0}}, {1})), Error);
}

TEST(SetCoverTest, GreedyTriangle) {
  CoverResult r = GreedyCover(Triangle());
  EXPECT_EQ(r.chosen.size(), 2u);
  EXPECT_EQ(r.chosen, (std::vector<int>{0, 1}));
  EXPECT_NEAR(r.lp_value, 1.5, 1e-9);
  EXPECT_NEAR(r.certified_rho, 1.5, 1e-12);
}

TEST(SetCoverTest, GreedyDominating) {
  CoverResult r = GreedyCover(Dominating());
  EXPECT_EQ(r.chosen, std::vector<int>{2});
  EXPECT_LE(1.0, r.certified_rho * r.lp_value);
}

TEST(SetCoverTest, SingletonsGiveLpValue) {
  CoverInstance c = Make(4, {{0}, {1}, {2}, {3}}, {0, 1, 2, 3});
  for (auto fn : {GreedyCover, PrimalDualCover, DisjointCover}) {
    CoverResult r = fn(c);
    EXPECT_EQ(r.chosen.size(), 4u);
    EXPECT_NEAR(r.lp_value, 4.0, 1e-9);
  }
}

TEST(SetCoverTest, PrimalDualTriangle) {
  CoverResult r = PrimalDualCover(Triangle());
  EXPECT_EQ(r.chosen.size(), 3u);
  EXPECT_EQ(r.certified_rho, 2.0);
  EXPECT_LE(3.0, r.certified_rho * r.lp_value + 1e-9);
}

TEST(SetCoverTest, ExactTriangle) {
  CoverResult r = ExactCover(Triangle());
  EXPECT_EQ(r.chosen.size(), 2u);
  EXPECT_NEAR(r.certified_rho, 4.0 / 3.0, 1e-9);
}

TEST(SetCoverTest, EmptyTarget) {
  CoverInstance c = Make(2, {{0}, {1}}, {});
  for (Strategy s : {Strategy::kGreedy, Strategy::kPrimalDual, Strategy::kExact,
                     Strategy::kDisjoint, Strategy::kAuto}) {
    CoverResult r = AutoCover(c, s);
    EXPECT_TRUE(r.chosen.empty());
    EXPECT_EQ(r.lp_value, 0.0);
    EXPECT_EQ(r.certified_rho, 1.0);
  }
}

TEST(SetCoverTest, ExactCapExceeded) {
  std::vector<std::vector<int>> sets(25, std::vector<int>{0});
  try {
    ExactCover(Make(1, sets, {0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
}

TEST(SetCoverTest, AutoPrefersGreedyOnTriangle) {
  CoverResult r = AutoCover(Triangle());
  EXPECT_EQ(r.strategy, Strategy::kGreedy);
  EXPECT_NEAR(r.certified_rho * r.lp_value, 2.25, 1e-9);
}

TEST(SetCoverTest, AutoTakesDisjointPath) {
  // Sets overlap outside the target only.
  CoverInstance c = Make(5, {{0, 1, 4}, {2, 4}, {3}}, {0, 1, 2, 3});
  ASSERT_TRUE(IsDisjointOnTarget(c));
  CoverResult r = AutoCover(c);
  EXPECT_EQ(r.strategy, Strategy::kDisjoint);
  EXPECT_EQ(r.certified_rho, 1.0);
  EXPECT_EQ(r.lp_value, 3.0);
  EXPECT_NEAR(CoverLpValue(c), 3.0, 1e-9);
}

TEST(SetCoverTest, DisjointRejectsOverlap) {
  EXPECT_THROW(DisjointCover(Triangle()), Error);
}

TEST(SetCoverTest, UnavailableStrategies) {
  for (Strategy s : {Strategy::kVcDimension, Strategy::kGeometric}) {
    try {
      AutoCover(Triangle(), s);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kUnavailable);
    }
  }
}

TEST(SetCoverTest, StrategyNames) {
  for (Strategy s : {Strategy::kGreedy, Strategy::kPrimalDual, Strategy::kExact,
                     Strategy::kDisjoint, Strategy::kAuto, Strategy::kVcDimension,
                     Strategy::kGeometric}) {
    EXPECT_EQ(ParseStrategy(ToString(s)), s);
  }
  EXPECT_THROW(ParseStrategy("lp"), Error);
}

TEST(SetCoverTest, HarmonicNumbers) {
  EXPECT_EQ(Harmonic(0), 0.0);
  EXPECT_EQ(Harmonic(1), 1.0);
  EXPECT_NEAR(Harmonic(3), 11.0 / 6.0, 1e-15);
}

TEST(SetCoverTest, CheckCoverCatchesBadResults) {
  CoverResult missing{{0}, 1.5, 2.0, Strategy::kGreedy};
  EXPECT_THROW(CheckCover(Triangle(), missing), Error);
  CoverResult loose{{0, 1, 2}, 1.5, 1.0, Strategy::kGreedy};
  EXPECT_THROW(CheckCover(Triangle(), loose), Error);
}

TEST(SetCoverProperty, RandomInstances) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    CoverInstance c = RandomInstance(rng, 12);
    const int optimum = c.target.empty() ? 0 : SubsetOracle(c);
    CoverResult exact = ExactCover(c);
    CoverResult greedy = GreedyCover(c);
    EXPECT_EQ(static_cast<int>(exact.chosen.size()), optimum);
    EXPECT_LE(exact.chosen.size(), greedy.chosen.size());
    int largest = 0;
    for (const auto& set : c.sets) {
      int inside = 0;
      for (int e : set) inside += std::count(c.target.begin(), c.target.end(), e);
      largest = std::max(largest, inside);
    }
    EXPECT_LE(greedy.chosen.size(), Harmonic(largest) * greedy.lp_value + 1e-7);
    EXPECT_LE(exact.lp_value, optimum + 1e-7);
    for (Strategy s : {Strategy::kGreedy, Strategy::kPrimalDual, Strategy::kExact,
                       Strategy::kAuto}) {
      CoverResult r = AutoCover(c, s);  // checks cover and certificate
      EXPECT_LE(r.chosen.size(), r.certified_rho * r.lp_value + kCertificateTolerance);
    }
  }
}

TEST(SetCoverProperty, DisjointInstancesAreExact) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 8);
    const int topics = m + static_cast<int>(rng() % 10);
    CoverInstance c;
    c.num_topics = topics;
    c.sets.resize(m);
    for (int e = 0; e < topics; ++e) {
      c.sets[e < m ? e : rng() % m].push_back(e);
      if (rng() % 2) c.target.push_back(e);
    }
    for (auto& set : c.sets) std::sort(set.begin(), set.end());
    for (Strategy s : {Strategy::kGreedy, Strategy::kPrimalDual, Strategy::kExact,
                       Strategy::kDisjoint, Strategy::kAuto}) {
      CoverResult r = AutoCover(c, s);
      EXPECT_NEAR(static_cast<double>(r.chosen.size()), r.lp_value, 1e-7);
    }
    EXPECT_EQ(AutoCover(c).certified_rho, 1.0);
  }
}

}  // namespace
}  // namespace rdc::setcover
