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

#include "rdc/core_model.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "rdc/error.h"

namespace rdc {
namespace {

Instance Tiny() {
  return Instance::FromIndices(2, {{0}, {1}, {0, 1}}, {{{0, 1}, 2}, {{0}, 1}});
}

bool HasKind(const std::vector<Violation>& v, ViolationKind kind) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

bool Mentions(const std::vector<Violation>& v, const std::string& text) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) {
    return x.message.find(text) != std::string::npos;
  });
}

Instance RandomInstance(std::mt19937_64& rng, int n, int m, int users) {
  std::vector<std::vector<int>> docs(n);
  for (auto& d : docs) {
    for (int e = 0; e < m; ++e) {
      if (rng() % 3 == 0) d.push_back(e);
    }
  }
  for (int e = 0; e < m; ++e) docs[rng() % n].push_back(e);
  std::vector<std::pair<std::vector<int>, int>> us;
  for (int u = 0; u < users; ++u) {
    std::vector<int> interests;
    for (int e = 0; e < m; ++e) {
      if (rng() % 2 == 0) interests.push_back(e);
    }
    if (interests.empty()) interests.push_back(static_cast<int>(rng() % m));
    us.push_back({interests, 1 + static_cast<int>(rng() % interests.size())});
  }
  return Instance::FromIndices(m, docs, us);
}

// Satisfying times straight from the definition, using std::set unions.
std::vector<int> DefinitionTimes(const Instance& inst, const std::vector<int>& order) {
  std::vector<int> times;
  for (int u = 0; u < inst.num_users(); ++u) {
    const std::set<int> interests(inst.user(u).interests.begin(), inst.user(u).interests.end());
    std::set<int> seen;
    int t = 0;
    for (int pos = 0; pos < static_cast<int>(order.size()); ++pos) {
      for (int e : inst.corpus().topics_of(order[pos])) {
        if (interests.count(e)) seen.insert(e);
      }
      if (static_cast<int>(seen.size()) >= inst.user(u).threshold) {
        t = pos + 1;
        break;
      }
    }
    times.push_back(t);
  }
  return times;
}

TEST(CoreModelTest, MinimalInstanceIsValid) {
  Instance inst = Instance::FromIndices(1, {{0}}, {{{0}, 1}});
  EXPECT_TRUE(Validate(inst).empty());
}

TEST(CoreModelTest, ThresholdAboveInterests) {
  Instance inst = Instance::FromIndices(2, {{0, 1}}, {{{0, 1}, 3}});
  auto v = Validate(inst);
  EXPECT_TRUE(HasKind(v, ViolationKind::kThresholdRange));
  EXPECT_TRUE(Mentions(v, "K exceeds |I|"));
}

TEST(CoreModelTest, ZeroThreshold) {
  Instance inst = Instance::FromIndices(1, {{0}}, {{{0}, 0}});
  EXPECT_TRUE(HasKind(Validate(inst), ViolationKind::kThresholdRange));
}

TEST(CoreModelTest, UncoveredTopic) {
  Instance inst = Instance::FromIndices(2, {{0}}, {{{0}, 1}});
  auto v = Validate(inst);
  EXPECT_TRUE(HasKind(v, ViolationKind::kUncoveredTopic));
  EXPECT_TRUE(Mentions(v, "uncovered topic"));
}

TEST(CoreModelTest, DuplicateIds) {
  Corpus corpus({"a", "a"}, {"d", "d"}, {{0}, {1}});
  Instance inst(corpus, {{"u", {0}, 1}, {"u", {1}, 1}});
  auto v = Validate(inst);
  EXPECT_EQ(std::count_if(v.begin(), v.end(),
                          [](const Violation& x) { return x.kind == ViolationKind::kDuplicateId; }),
            3);
}

TEST(CoreModelTest, BadIndicesThrow) {
  EXPECT_THROW(Corpus({"a"}, {"d"}, {{1}}), Error);
  EXPECT_THROW(Instance::FromIndices(1, {{0}}, {{{2}, 1}}), Error);
}

TEST(CoreModelTest, CorpusLookups) {
  Instance tiny = Tiny();
  const Corpus& c = tiny.corpus();
  EXPECT_EQ(c.documents_with(0), (std::vector<int>{0, 2}));
  EXPECT_TRUE(c.contains(2, 1));
  EXPECT_FALSE(c.contains(0, 1));
  EXPECT_EQ(c.FindTopic("e2"), 1);
  EXPECT_EQ(c.FindDocument("s3"), 2);
  EXPECT_FALSE(c.FindDocument("s4").has_value());
  EXPECT_EQ(tiny.FindUser("u2"), 1);
  EXPECT_EQ(tiny.overlap(0, 2), 2);
  EXPECT_EQ(tiny.overlap(1, 1), 0);
}

TEST(CoreModelTest, CoverageCountExamples) {
  Instance inst = Instance::FromIndices(3, {{0, 1}, {1, 2}}, {{{0, 1, 2}, 1}});
  EXPECT_EQ(CoverageCount(inst, 0, std::vector<int>{0}), 2);
  EXPECT_EQ(CoverageCount(inst, 0, std::vector<int>{}), 0);
  EXPECT_EQ(CoverageCount(inst, 0, std::vector<int>{0, 1}), 3);
  EXPECT_THROW(CoverageCount(inst, 0, std::vector<int>{5}), Error);
  EXPECT_THROW(CoverageCount(inst, 3, std::vector<int>{0}), Error);
}

TEST(CoreModelTest, EvaluateExamples) {
  Instance tiny = Tiny();
  Ranking a = Evaluate(tiny, std::vector<int>{0, 1, 2});
  EXPECT_EQ(a.satisfy_times, (std::vector<int>{2, 1}));
  EXPECT_EQ(a.total_cost, 3);
  Ranking b = Evaluate(tiny, std::vector<int>{2, 0, 1});
  EXPECT_EQ(b.satisfy_times, (std::vector<int>{1, 1}));
  EXPECT_EQ(b.total_cost, 2);
  Instance one = Instance::FromIndices(1, {{0}}, {{{0}, 1}});
  EXPECT_EQ(Evaluate(one, std::vector<int>{0}).total_cost, 1);
}

TEST(CoreModelTest, EvaluateRejectsNonPermutations) {
  Instance tiny = Tiny();
  EXPECT_THROW(Evaluate(tiny, std::vector<int>{0, 1}), Error);
  EXPECT_THROW(Evaluate(tiny, std::vector<int>{0, 0, 1}), Error);
  EXPECT_THROW(Evaluate(tiny, std::vector<int>{0, 1, 3}), Error);
}

TEST(CoreModelTest, CompleteRankingExamples) {
  std::vector<std::vector<int>> a{{0}, {0, 1}};
  EXPECT_EQ(CompleteRanking(3, a), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(CompleteRanking(2, {}), (std::vector<int>{0, 1}));
  std::vector<std::vector<int>> c{{2, 1}, {0}};
  EXPECT_EQ(CompleteRanking(3, c), (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(CompleteRanking(3, c, false), (std::vector<int>{2, 1, 0}));
  std::vector<std::vector<int>> bad{{4}};
  EXPECT_THROW(CompleteRanking(3, bad), Error);
}

TEST(CoreModelTest, CoverageStateCounts) {
  Instance tiny = Tiny();
  CoverageState state(tiny);
  EXPECT_EQ(state.Add(0), 1);
  EXPECT_TRUE(state.satisfied(1));
  EXPECT_FALSE(state.satisfied(0));
  EXPECT_EQ(state.Add(2), 1);
  EXPECT_EQ(state.Add(1), 0);
  EXPECT_EQ(state.count(0), 2);
  EXPECT_EQ(state.num_covered(), 2);
}

TEST(CoreModelProperty, EvaluateMatchesDefinition) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Instance inst = RandomInstance(rng, 1 + trial % 8, 1 + trial % 7, 1 + trial % 5);
    ASSERT_TRUE(Validate(inst).empty());
    std::vector<int> order(inst.num_documents());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Ranking r = Evaluate(inst, order);
    const std::vector<int> expected = DefinitionTimes(inst, order);
    EXPECT_EQ(r.satisfy_times, expected);
    EXPECT_EQ(r.total_cost, std::accumulate(expected.begin(), expected.end(), std::int64_t{0}));
    for (int t : r.satisfy_times) {
      EXPECT_GE(t, 1);
      EXPECT_LE(t, inst.num_documents());
    }
  }
}

TEST(CoreModelProperty, CoverageIsMonotoneAndSubmodular) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    Instance inst = RandomInstance(rng, 6, 8, 2);
    std::vector<int> a, b;
    for (int s = 0; s < inst.num_documents(); ++s) {
      const auto r = rng() % 3;
      if (r == 0) a.push_back(s);
      if (r <= 1) b.push_back(s);  // a ⊆ b
    }
    const int extra = static_cast<int>(rng() % inst.num_documents());
    for (int u = 0; u < inst.num_users(); ++u) {
      const int fa = CoverageCount(inst, u, a);
      const int fb = CoverageCount(inst, u, b);
      EXPECT_LE(fa, fb);
      auto a2 = a, b2 = b;
      a2.push_back(extra);
      b2.push_back(extra);
      EXPECT_GE(CoverageCount(inst, u, a2) - fa, CoverageCount(inst, u, b2) - fb);
    }
  }
}

TEST(CoreModelProperty, PrefixTimesSurviveAppends) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = RandomInstance(rng, 7, 6, 4);
    std::vector<int> order(inst.num_documents());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const int cut = static_cast<int>(rng() % order.size());
    std::vector<int> prefix(order.begin(), order.begin() + cut);
    std::vector<int> other = order;
    std::shuffle(other.begin() + cut, other.end(), rng);
    const auto first = Evaluate(inst, order).satisfy_times;
    const auto second = Evaluate(inst, other).satisfy_times;
    for (int u = 0; u < inst.num_users(); ++u) {
      if (first[u] <= cut) EXPECT_EQ(first[u], second[u]);
    }
  }
}

TEST(CoreModelProperty, CompleteRankingAlwaysPermutes) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    std::vector<std::vector<int>> rounds(rng() % 4);
    for (auto& r : rounds) {
      for (int i = 0; i < 5; ++i) r.push_back(static_cast<int>(rng() % n));
    }
    EXPECT_NO_THROW(CheckPermutation(CompleteRanking(n, rounds), n));
    EXPECT_NO_THROW(CheckPermutation(CompleteRanking(n, rounds, false), n));
  }
}

}  // namespace
}  // namespace rdc
