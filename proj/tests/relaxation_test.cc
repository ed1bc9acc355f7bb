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

#include "rdc/relaxation.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "rdc/error.h"

namespace rdc {
namespace {

Instance Tiny() {
  return Instance::FromIndices(2, {{0}, {1}, {0, 1}}, {{{0, 1}, 2}, {{0}, 1}});
}

Instance ExampleOne() {
  std::vector<std::vector<int>> docs(9, std::vector<int>{0});
  docs.push_back({1});
  std::vector<std::pair<std::vector<int>, int>> users;
  for (int i = 0; i < 100; ++i) users.push_back({{0}, 1});
  for (int i = 0; i < 50; ++i) users.push_back({{1}, 1});
  return Instance::FromIndices(2, docs, users);
}

Instance RandomInstance(std::mt19937_64& rng, int max_docs, int max_topics, int max_users) {
  const int n = 1 + static_cast<int>(rng() % max_docs);
  const int m = 1 + static_cast<int>(rng() % max_topics);
  const int users = 1 + static_cast<int>(rng() % max_users);
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

std::int64_t PermutationOptimum(const Instance& inst) {
  std::vector<int> order(inst.num_documents());
  std::iota(order.begin(), order.end(), 0);
  std::int64_t best = -1;
  do {
    const auto cost = Evaluate(inst, order).total_cost;
    if (best < 0 || cost < best) best = cost;
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Coefficient of z_{s,t} in the knapsack-cover row, straight from the
// definition of T1, T2 and S(e, u, F).
std::map<int, double> OracleCoefficients(const Instance& inst, int u,
                                         const std::vector<int>& fixed) {
  const User& user = inst.user(u);
  std::vector<int> open;
  for (int e : user.interests) {
    if (std::find(fixed.begin(), fixed.end(), e) == fixed.end()) open.push_back(e);
  }
  const int residual = user.threshold - static_cast<int>(fixed.size());
  std::map<int, double> coeff;
  for (int s = 0; s < inst.num_documents(); ++s) {
    int hits = 0;
    for (int e : open) hits += inst.corpus().contains(s, e) ? 1 : 0;
    const double c = hits >= residual ? residual : hits;
    if (c > 0) coeff[s] = c;
  }
  return coeff;
}

double Sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(RelaxationTest, BaseCountsForTwoDocuments) {
  Instance inst = Instance::FromIndices(1, {{0}, {0}}, {{{0}, 1}});
  BaseProgram base = BuildBase(inst);
  EXPECT_EQ(base.program.num_variables(), 4 + 4 + 2);
  int assignment = 0, prefix = 0, mono = 0;
  for (const lp::Row& row : base.program.rows()) {
    if (row.name.rfind("doc_", 0) == 0 || row.name.rfind("time_", 0) == 0) ++assignment;
    if (row.name.rfind("prefix_", 0) == 0) ++prefix;
    if (row.name.rfind("mono_", 0) == 0) ++mono;
  }
  EXPECT_EQ(assignment, 4);
  EXPECT_EQ(prefix, 4);
  EXPECT_EQ(mono, 1);
}

TEST(RelaxationTest, BaseOptimumIsZero) {
  for (const Instance& inst : {Instance::FromIndices(1, {{0}}, {{{0}, 1}}), Tiny()}) {
    BaseProgram base = BuildBase(inst);
    lp::LpSolution sol = lp::Solve(base.program);
    ASSERT_EQ(sol.status, lp::SolveStatus::kOptimal);
    EXPECT_NEAR(sol.objective, 0.0, 1e-9);
  }
  Instance one = Instance::FromIndices(1, {{0}}, {{{0}, 1}});
  BaseProgram base = BuildBase(one);
  lp::LpSolution sol = lp::Solve(base.program);
  EXPECT_NEAR(sol.values[base.layout.x(0, 1)], 1.0, 1e-9);
  EXPECT_NEAR(sol.values[base.layout.z(0, 1)], 1.0, 1e-9);
}

TEST(RelaxationTest, KnapsackRowEmptyF) {
  KnapsackRow row = MakeKnapsackRow(Tiny(), 0, 1, std::vector<int>{});
  EXPECT_EQ(row.residual, 2);
  EXPECT_EQ(row.t1, std::vector<int>{2});
  EXPECT_EQ(row.t2, (std::vector<int>{0, 1}));
  ASSERT_EQ(row.topic_docs.size(), 2u);
  EXPECT_EQ(row.topic_docs[0], std::vector<int>{0});
  EXPECT_EQ(row.topic_docs[1], std::vector<int>{1});
  using P = std::pair<int, double>;
  EXPECT_EQ(row.DocCoefficients(), (std::vector<P>{{0, 1.0}, {1, 1.0}, {2, 2.0}}));
}

TEST(RelaxationTest, KnapsackRowFixedTopic) {
  KnapsackRow row = MakeKnapsackRow(Tiny(), 0, 1, std::vector<int>{0});
  EXPECT_EQ(row.residual, 1);
  EXPECT_EQ(row.t1, (std::vector<int>{1, 2}));
  using P = std::pair<int, double>;
  EXPECT_EQ(row.DocCoefficients(), (std::vector<P>{{1, 1.0}, {2, 1.0}}));
}

TEST(RelaxationTest, KnapsackRowForcesUnsatisfiedPrefix) {
  Instance tiny = Tiny();
  RelaxationVariables v = IntegralAssignment(tiny, std::vector<int>{0, 1, 2});
  KnapsackRow row = MakeKnapsackRow(tiny, 0, 1, std::vector<int>{});
  EXPECT_EQ(v.y(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(row.Violation(v), -1.0);
  v.values[v.layout.y(0, 1)] = 1.0;  // 2y <= 1 fails for y = 1
  EXPECT_DOUBLE_EQ(row.Violation(v), 1.0);
}

TEST(RelaxationTest, KnapsackRowRejectsBadArguments) {
  Instance tiny = Tiny();
  EXPECT_THROW(MakeKnapsackRow(tiny, 0, 1, std::vector<int>{0, 1}), Error);
  EXPECT_THROW(MakeKnapsackRow(tiny, 1, 1, std::vector<int>{1}), Error);
  EXPECT_THROW(MakeKnapsackRow(tiny, 0, 1, std::vector<int>{0, 0}), Error);
  EXPECT_THROW(MakeKnapsackRow(tiny, 0, 0, std::vector<int>{}), Error);
  EXPECT_THROW(MakeKnapsackRow(tiny, 0, 4, std::vector<int>{}), Error);
  EXPECT_THROW(MakeKnapsackRow(tiny, 2, 1, std::vector<int>{}), Error);
}

TEST(RelaxationTest, SeparationTimes) {
  EXPECT_EQ(SeparationTimes(1), std::vector<int>{1});
  EXPECT_EQ(SeparationTimes(5), (std::vector<int>{1, 2, 4, 5}));
  EXPECT_EQ(SeparationTimes(8), (std::vector<int>{1, 2, 4, 8}));
}

TEST(RelaxationTest, SeparateZeroCoverage) {
  Instance inst = Instance::FromIndices(3, {{0}, {1}, {2}}, {{{0, 1, 2}, 3}});
  RelaxationVariables v;
  v.layout = RelaxationLayout(3, {1});
  v.values.assign(v.layout.num_variables(), 0.0);
  v.values[v.layout.y(0, 1)] = 1.0;
  auto rows = Separate(inst, v, std::vector<int>{1});
  ASSERT_FALSE(rows.empty());
  EXPECT_TRUE(rows.front().fixed.empty());
  EXPECT_NEAR(rows.front().Violation(v), 3.0, 1e-12);
}

TEST(RelaxationTest, SeparateThinSpread) {
  // Each topic carries just under 1/50 of coverage: nothing is nearly
  // covered, so the F = ∅ row must fire.
  Instance inst = Instance::FromIndices(3, {{0}, {1}, {2}, {}}, {{{0, 1, 2}, 2}});
  RelaxationVariables v;
  v.layout = RelaxationLayout(4, {1});
  v.values.assign(v.layout.num_variables(), 0.0);
  for (int s = 0; s < 3; ++s) v.values[v.layout.z(s, 1)] = 1.0 / 50 - 1e-4;
  v.values[v.layout.y(0, 1)] = 1.0;
  RelaxationConfig config;
  config.prefix_family = false;
  auto rows = Separate(inst, v, std::vector<int>{1}, config);
  ASSERT_FALSE(rows.empty());
  EXPECT_TRUE(rows.front().fixed.empty());
  EXPECT_EQ(rows.front().family, SeparationFamily::kNearlyCovered);
  EXPECT_GT(rows.front().Violation(v), 1.8);
}

TEST(RelaxationTest, TinyBound) {
  FractionalSolution sol = SolveRelaxation(Tiny());
  EXPECT_GT(sol.lower_bound, 0.0);
  EXPECT_LE(sol.lower_bound, 2.0 + 1e-7);
  EXPECT_NEAR(sol.lower_bound, sol.lp_objective + 2.0, 1e-12);
}

TEST(RelaxationTest, SingleDocumentBound) {
  FractionalSolution sol = SolveRelaxation(Instance::FromIndices(1, {{0}}, {{{0}, 1}}));
  EXPECT_NEAR(sol.lp_objective, 0.0, 1e-9);
  EXPECT_LE(sol.lower_bound, 1.0 + 1e-9);
}

TEST(RelaxationTest, ExampleOneBound) {
  FractionalSolution sol = SolveRelaxation(ExampleOne());
  EXPECT_LE(sol.lower_bound, 200.0 + 1e-6);
  EXPECT_GE(sol.lower_bound, 150.0);
}

TEST(RelaxationTest, HalfTimeExamples) {
  EXPECT_EQ(HalfTime(std::vector<double>{0.2, 0.5, 0.9}), 2);
  EXPECT_EQ(HalfTime(std::vector<double>{0.9, 0.95, 1.0}), 0);
  EXPECT_EQ(HalfTime(std::vector<double>{0.5, 0.5, 0.5}), 3);
}

TEST(RelaxationTest, RowTable) {
  FractionalSolution sol = SolveRelaxation(Tiny());
  std::ostringstream out;
  WriteRowTable(sol, out);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("iter\tuser\tgroup\tt\t|F|\tF\tviolation\tfamily\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')),
            sol.rows.size() + 1);
}

// Every permutation's integral point satisfies every row, and the row's
// coefficients match the definition computed independently.
TEST(RelaxationProperty, IntegralPointsSatisfyKnapsackRows) {
  std::mt19937_64 rng(21);
  int checked = 0;
  while (checked < 500) {
    Instance inst = RandomInstance(rng, 8, 8, 4);
    std::vector<int> order(inst.num_documents());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    RelaxationVariables v = IntegralAssignment(inst, order);
    const int u = static_cast<int>(rng() % inst.num_users());
    const User& user = inst.user(u);
    const int t = 1 + static_cast<int>(rng() % inst.num_documents());
    std::vector<int> fixed = user.interests;
    std::shuffle(fixed.begin(), fixed.end(), rng);
    fixed.resize(rng() % user.threshold);
    KnapsackRow row = MakeKnapsackRow(inst, u, t, fixed);
    const auto coefficients = row.DocCoefficients();
    std::map<int, double> got(coefficients.begin(), coefficients.end());
    std::erase_if(got, [](const auto& kv) { return kv.second == 0.0; });
    EXPECT_EQ(got, OracleCoefficients(inst, u, fixed));
    EXPECT_LE(row.Violation(v), 0.0);
    ++checked;
  }
}

TEST(RelaxationProperty, IntegralPointsHaveNothingToSeparate) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = RandomInstance(rng, 8, 8, 4);
    std::vector<int> order(inst.num_documents());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    RelaxationVariables v = IntegralAssignment(inst, order);
    std::vector<int> all(inst.num_documents());
    std::iota(all.begin(), all.end(), 1);
    EXPECT_TRUE(Separate(inst, v, all).empty());
  }
}

TEST(RelaxationProperty, SolvedProgramInvariants) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = RandomInstance(rng, 6, 8, 5);
    FractionalSolution sol = SolveRelaxation(inst);
    const RelaxationVariables& v = sol.variables;
    const int n = inst.num_documents();
    for (int t = 1; t <= n; ++t) {
      double mass = 0.0;
      for (int s = 0; s < n; ++s) {
        mass += v.z(s, t);
        if (t > 1) EXPECT_GE(v.z(s, t), v.z(s, t - 1) - 1e-7);
      }
      EXPECT_NEAR(mass, t, 1e-6);
    }
    for (int u = 0; u < inst.num_users(); ++u) {
      const auto curve = v.UserCurve(u);
      for (std::size_t t = 0; t < curve.size(); ++t) {
        EXPECT_GE(curve[t], -1e-7);
        EXPECT_LE(curve[t], 1.0 + 1e-7);
        if (t > 0) EXPECT_GE(curve[t], curve[t - 1] - 1e-7);
      }
      EXPECT_EQ(sol.half_times[u], HalfTime(curve));
    }
    for (const GeneratedRow& g : sol.rows) {
      KnapsackRow row = MakeKnapsackRow(inst, g.user, g.time, g.fixed);
      EXPECT_LE(row.Violation(v), 1e-6);
    }
    EXPECT_LE(sol.HalfBound(), sol.lp_objective + 1e-6);
    EXPECT_LE(sol.lower_bound, PermutationOptimum(inst) + 1e-6);
  }
}

TEST(RelaxationProperty, PrefixFamilyNeverWeakensBound) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = RandomInstance(rng, 6, 8, 4);
    RelaxationConfig plain;
    plain.prefix_family = false;
    const double exact_only = SolveRelaxation(inst, plain).lower_bound;
    const double both = SolveRelaxation(inst).lower_bound;
    const auto optimum = static_cast<double>(PermutationOptimum(inst));
    EXPECT_LE(exact_only, optimum + 1e-6);
    EXPECT_LE(both, optimum + 1e-6);
  }
}

}  // namespace
}  // namespace rdc
