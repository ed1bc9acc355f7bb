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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "rdc/baselines.h"
#include "rdc/error.h"
#include "rdc/generators.h"
#include "rdc/instance_io.h"
#include "rdc/pipeline.h"

namespace rdc {
namespace {

constexpr const char* kMinimal = R"({
  "kind": "rdc",
  "topics": ["a"],
  "documents": [{"id": "d", "topics": ["a"]}],
  "users": [{"id": "u", "interests": ["a"], "k": 1}]
})";

constexpr const char* kTiny = R"({
  "kind": "rdc",
  "topics": ["e1", "e2"],
  "documents": [{"id": "s1", "topics": ["e1"]},
                {"id": "s2", "topics": ["e2"]},
                {"id": "s3", "topics": ["e1", "e2"]}],
  "users": [{"id": "u1", "interests": ["e1", "e2"], "k": 2},
            {"id": "u2", "interests": ["e1"], "k": 1}]
})";

ErrorCode CodeOf(const std::function<void()>& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvariant;
}

TEST(ParseInstance, MinimalRdc) {
  const AnyInstance parsed = ParseInstance(kMinimal);
  ASSERT_EQ(KindOf(parsed), InstanceKind::kRdc);
  const Instance& x = std::get<Instance>(parsed);
  EXPECT_EQ(x.num_documents(), 1);
  EXPECT_EQ(x.num_users(), 1);
}

TEST(ParseInstance, RgcWithTwoGroups) {
  const AnyInstance parsed = ParseInstance(R"({
    "kind": "rgc", "topics": ["a", "b", "c"],
    "documents": [{"id": "d1", "topics": ["a", "b"]}, {"id": "d2", "topics": ["c"]}],
    "users": [{"id": "u", "groups": [{"interests": ["a", "b"], "k": 2},
                                     {"interests": ["c"], "k": 1}]}]})");
  ASSERT_EQ(KindOf(parsed), InstanceKind::kRgc);
  const GroupInstance& x = std::get<GroupInstance>(parsed);
  EXPECT_EQ(x.user(0).groups.size(), 2u);
  EXPECT_EQ(x.user(0).groups[0].threshold, 2);
}

TEST(ParseInstance, ThresholdAboveInterestsIsInvalid) {
  std::string message;
  EXPECT_EQ(CodeOf([] {
              ParseInstance(R"({"kind": "rdc", "topics": ["a"],
                "documents": [{"id": "d", "topics": ["a"]}],
                "users": [{"id": "u", "interests": ["a"], "k": 2}]})");
            },
            &message),
            ErrorCode::kInvalidInstance);
  EXPECT_NE(message.find("u"), std::string::npos);
}

TEST(ParseInstance, SyntaxErrorReportsLine) {
  std::string message;
  EXPECT_EQ(CodeOf([] { ParseInstance("{\n  \"kind\": \"rdc\",\n  \"topics\": [,]\n}"); }, &message),
            ErrorCode::kParse);
  EXPECT_EQ(message.rfind("line 3:", 0), 0u) << message;
}

TEST(ParseInstance, SchemaErrorReportsField) {
  std::string message;
  EXPECT_EQ(CodeOf([] {
              ParseInstance(R"({"kind": "rdc", "topics": ["a"],
                "documents": [{"id": "d", "topics": ["a"]}],
                "users": [{"id": "u", "interests": ["a"], "k": "one"}]})");
            },
            &message),
            ErrorCode::kParse);
  EXPECT_NE(message.find("/users/0/k"), std::string::npos) << message;

  EXPECT_EQ(CodeOf([] { ParseInstance(R"({"kind": "rdc", "topics": ["a"], "users": []})"); },
                   &message),
            ErrorCode::kParse);
  EXPECT_NE(message.find("documents"), std::string::npos) << message;
  EXPECT_EQ(CodeOf([] { ParseInstance(R"({"kind": "lp", "topics": [], "documents": [], "users": []})"); }),
            ErrorCode::kParse);
}

TEST(ParseInstance, UnknownReferenceIsInvalid) {
  std::string message;
  EXPECT_EQ(CodeOf([] {
              ParseInstance(R"({"kind": "rdc", "topics": ["a"],
                "documents": [{"id": "d", "topics": ["zz"]}], "users": []})");
            },
            &message),
            ErrorCode::kInvalidInstance);
  EXPECT_NE(message.find("/documents/0/topics/0"), std::string::npos) << message;
}

TEST(ParseInstance, ReadFileMissing) {
  EXPECT_EQ(CodeOf([] { ReadInstanceFile("/nonexistent/instance.json"); }),
            ErrorCode::kInvalidArgument);
}

// parse(serialize(x)) == x for every kind and many generated instances.
TEST(RoundTrip, AllKinds) {
  for (GeneratorKind kind : {GeneratorKind::kRandom, GeneratorKind::kDisjoint,
                             GeneratorKind::kFreqBounded, GeneratorKind::kExample1,
                             GeneratorKind::kRgcRandom, GeneratorKind::kRxosRandom}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      GeneratorParams params;
      params.documents = 6;
      params.topics = 12;
      const AnyInstance x = Generate(kind, params, seed);
      const std::string text = SerializeInstance(x);
      const AnyInstance back = ParseInstance(text);
      EXPECT_EQ(back, x) << ToString(kind) << " seed " << seed;
      EXPECT_EQ(SerializeInstance(back), text);
    }
  }
}

TEST(RoundTrip, ParsedTextSurvives) {
  const AnyInstance x = ParseInstance(kTiny);
  EXPECT_EQ(ParseInstance(SerializeInstance(x)), x);
}

TEST(Generators, ExampleOneShape) {
  const Instance x = std::get<Instance>(Generate(GeneratorKind::kExample1, {}, 0));
  EXPECT_EQ(x.num_documents(), 10);
  EXPECT_EQ(x.num_users(), 150);
  int first = 0, second = 0;
  for (const User& u : x.users()) {
    EXPECT_EQ(u.threshold, 1);
    ASSERT_EQ(u.interests.size(), 1u);
    (u.interests[0] == 0 ? first : second)++;
  }
  EXPECT_EQ(first, 100);
  EXPECT_EQ(second, 50);
  EXPECT_TRUE(Validate(x).empty());
}

TEST(Generators, DisjointEachTopicOnce) {
  GeneratorParams p;
  p.documents = 5;
  p.topics = 10;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance x = std::get<Instance>(Generate(GeneratorKind::kDisjoint, p, seed));
    for (int e = 0; e < x.num_topics(); ++e) {
      EXPECT_EQ(x.corpus().documents_with(e).size(), 1u);
    }
    for (int s = 0; s < x.num_documents(); ++s) {
      EXPECT_FALSE(x.corpus().topics_of(s).empty());
      EXPECT_LE(static_cast<int>(x.corpus().topics_of(s).size()), p.max_per_doc);
    }
  }
}

TEST(Generators, DisjointInfeasibleParameters) {
  GeneratorParams p;
  p.documents = 2;
  p.topics = 9;
  p.max_per_doc = 4;
  EXPECT_EQ(CodeOf([&] { Generate(GeneratorKind::kDisjoint, p, 1); }), ErrorCode::kInvalidArgument);
  p.topics = 1;
  EXPECT_EQ(CodeOf([&] { Generate(GeneratorKind::kDisjoint, p, 1); }), ErrorCode::kInvalidArgument);
}

TEST(Generators, FrequencyBounded) {
  GeneratorParams p;
  p.documents = 12;
  p.topics = 15;
  p.density = 0.6;
  p.max_frequency = 2;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance x = std::get<Instance>(Generate(GeneratorKind::kFreqBounded, p, seed));
    for (int e = 0; e < x.num_topics(); ++e) {
      const auto n = x.corpus().documents_with(e).size();
      EXPECT_GE(n, 1u);
      EXPECT_LE(n, 2u);
    }
  }
}

TEST(Generators, RandomIsValidAndDeterministic) {
  GeneratorParams p;
  p.k_min = 2;
  p.k_max = 4;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const AnyInstance a = Generate(GeneratorKind::kRandom, p, seed);
    EXPECT_EQ(a, Generate(GeneratorKind::kRandom, p, seed));
    const Instance& x = std::get<Instance>(a);
    EXPECT_TRUE(Validate(x).empty());
    for (const User& u : x.users()) {
      EXPECT_GE(u.threshold, 1);
      EXPECT_LE(u.threshold, std::min<int>(4, u.interests.size()));
    }
  }
  EXPECT_NE(Generate(GeneratorKind::kRandom, p, 1), Generate(GeneratorKind::kRandom, p, 2));
}

TEST(Generators, ExtensionKindsValidate) {
  GeneratorParams p;
  p.groups = 3;
  p.functions = 3;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_TRUE(Validate(std::get<GroupInstance>(Generate(GeneratorKind::kRgcRandom, p, seed))).empty());
    EXPECT_TRUE(Validate(std::get<XosInstance>(Generate(GeneratorKind::kRxosRandom, p, seed))).empty());
  }
}

TEST(Generators, ParseNames) {
  EXPECT_EQ(ParseGeneratorKind("freq-bounded"), GeneratorKind::kFreqBounded);
  EXPECT_EQ(ToString(GeneratorKind::kExample1), "example1");
  EXPECT_EQ(CodeOf([] { ParseGeneratorKind("zipf"); }), ErrorCode::kInvalidArgument);
}

TEST(Pipeline, ExampleOne) {
  PipelineConfig config;
  config.oracle_cap = 10;
  const RunReport r = RunPipeline(Generate(GeneratorKind::kExample1, {}, 0), config, "example1");
  ASSERT_TRUE(r.oracle_cost.has_value());
  EXPECT_EQ(*r.oracle_cost, 200);
  EXPECT_EQ(r.prp_cost, 600);
  EXPECT_EQ(r.greedy_satisfy_cost, 200);
  EXPECT_LE(r.lower_bound, 200.0 + kChainTolerance);
  EXPECT_GE(r.solver_cost, 200);
  EXPECT_EQ(r.trial_costs.size(), 10u);
  EXPECT_EQ(r.solver_cost, *std::min_element(r.trial_costs.begin(), r.trial_costs.end()));
}

TEST(Pipeline, Tiny) {
  const RunReport r = RunPipeline(ParseInstance(kTiny), PipelineConfig{});
  EXPECT_EQ(r.oracle_cost, 2);
  EXPECT_LE(r.lower_bound, 2.0 + kChainTolerance);
  EXPECT_GE(r.solver_cost, 2);
  EXPECT_LE(r.half_bound, r.lp_objective + kChainTolerance);
}

TEST(Pipeline, LargeInstanceHasNoOracle) {
  GeneratorParams p;
  p.documents = 30;
  p.topics = 20;
  p.users = 6;
  p.density = 0.1;
  PipelineConfig config;
  config.rounding.trials = 2;
  const RunReport r = RunPipeline(Generate(GeneratorKind::kRandom, p, 7), config);
  EXPECT_FALSE(r.oracle_cost.has_value());
  EXPECT_GT(r.ratio, 0.0);
  EXPECT_DOUBLE_EQ(r.ratio, r.solver_cost / r.lower_bound);
  const std::string json = ReportJson(r);
  EXPECT_NE(json.find("\"oracle\": null"), std::string::npos);
}

TEST(Pipeline, ChainHoldsOnRandomInstances) {
  for (GeneratorKind kind : {GeneratorKind::kRandom, GeneratorKind::kRgcRandom,
                             GeneratorKind::kRxosRandom}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      GeneratorParams p;
      p.documents = 6;
      p.topics = 8;
      p.users = 4;
      PipelineConfig config;
      config.rounding.trials = 3;
      const RunReport r = RunPipeline(Generate(kind, p, seed), config);
      ASSERT_TRUE(r.oracle_cost.has_value());
      EXPECT_LE(r.lower_bound, *r.oracle_cost + kChainTolerance);
      EXPECT_LE(*r.oracle_cost, r.solver_cost);
      if (r.prp_cost) EXPECT_LE(*r.oracle_cost, *r.prp_cost);
    }
  }
}

TEST(Pipeline, ReportIsDeterministicAndSelfContained) {
  PipelineConfig config;
  config.rounding.seed = 11;
  const AnyInstance x = ParseInstance(kTiny);
  const std::string a = ReportJson(RunPipeline(x, config, "tiny"));
  const std::string b = ReportJson(RunPipeline(x, config, "tiny"));
  EXPECT_EQ(a, b);
  const auto json = nlohmann::json::parse(a);
  EXPECT_EQ(json["seed"], 11);
  EXPECT_EQ(json["config"]["scale"], 50.0);
  EXPECT_EQ(json["config"]["overflow_base"], 70.0);
  EXPECT_EQ(ParseInstance(json["instance"].dump()), x);
  EXPECT_EQ(json["rounding"]["rounds"].size(), static_cast<std::size_t>(NumRounds(3)));
}

TEST(Pipeline, FinalProgramKeepsTheOptimum) {
  GeneratorParams p;
  p.documents = 5;
  p.topics = 8;
  p.users = 4;
  p.k_max = 3;
  for (GeneratorKind kind : {GeneratorKind::kRandom, GeneratorKind::kRgcRandom,
                             GeneratorKind::kRxosRandom}) {
    const AnyInstance x = Generate(kind, p, 3);
    PipelineConfig config;
    const FractionalSolution frac = SolveAnyRelaxation(x, config);
    const lp::LinearProgram program = FinalProgram(x, frac);
    const lp::LpSolution again = lp::Solve(program);
    ASSERT_EQ(again.status, lp::SolveStatus::kOptimal);
    EXPECT_NEAR(again.objective, frac.lp_objective, 1e-6) << ToString(kind);
    EXPECT_LE(program.MaxViolation(frac.variables.values), 1e-6);
  }
}

TEST(Pipeline, EvaluateAnyChecksPermutation) {
  const AnyInstance x = ParseInstance(kTiny);
  EXPECT_EQ(EvaluateAny(x, std::vector<int>{2, 0, 1}).total_cost, 2);
  EXPECT_EQ(CodeOf([&] { EvaluateAny(x, std::vector<int>{0, 0, 1}); }), ErrorCode::kInvalidArgument);
}

Suite SmallSuite() {
  return ParseSuite(R"({"name": "mix", "members": [
    {"generator": "random", "count": 4, "seed": 10,
     "params": {"documents": 6, "topics": 8, "users": 4}},
    {"generator": "disjoint", "count": 3, "seed": 20,
     "params": {"documents": 5, "topics": 10, "users": 4}, "trials": 3}]})");
}

TEST(Bench, RowsAndPerKindAggregates) {
  PipelineConfig config;
  config.rounding.trials = 4;
  const BenchResult result = RunBench(SmallSuite(), config);
  ASSERT_EQ(result.rows.size(), 7u);
  ASSERT_EQ(result.aggregates.size(), 3u);
  EXPECT_EQ(result.aggregates[0].group, "random");
  EXPECT_EQ(result.aggregates[0].instances, 4);
  EXPECT_EQ(result.aggregates[1].group, "disjoint");
  EXPECT_EQ(result.aggregates[1].instances, 3);
  EXPECT_EQ(result.aggregates[2].group, "all");
  EXPECT_EQ(result.aggregates[2].instances, 7);
  EXPECT_EQ(result.aggregates[2].failures, 0);
  EXPECT_GE(result.aggregates[2].max_ratio, result.aggregates[2].mean_ratio);
  EXPECT_EQ(result.rows[5].report->trial_costs.size(), 3u);

  std::ostringstream csv;
  WriteCsv(result, csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, kCsvHeader);
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 13) << line;
  }
  EXPECT_EQ(count, 7 + 2 * 3);
}

TEST(Bench, SameSeedSameBytes) {
  PipelineConfig config;
  config.rounding.trials = 3;
  std::ostringstream a, b, c;
  WriteCsv(RunBench(SmallSuite(), config), a);
  WriteCsv(RunBench(SmallSuite(), config), b);
  WriteCsv(RunBench(SmallSuite(), config, 4), c);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str(), c.str());
  EXPECT_EQ(BenchJson(RunBench(SmallSuite(), config)), BenchJson(RunBench(SmallSuite(), config, 3)));
}

TEST(Bench, FailedMemberIsRecorded) {
  const Suite suite = ParseSuite(R"({"members": [
    {"generator": "disjoint", "params": {"documents": 4, "topics": 2}},
    {"generator": "example1"}]})");
  const BenchResult result = RunBench(suite, PipelineConfig{});
  ASSERT_EQ(result.rows.size(), 2u);
  EXPECT_FALSE(result.rows[0].report.has_value());
  EXPECT_FALSE(result.rows[0].error.empty());
  EXPECT_TRUE(result.rows[1].report.has_value());
  EXPECT_EQ(result.aggregates.back().failures, 1);
}

TEST(Bench, SuiteErrors) {
  std::string message;
  EXPECT_EQ(CodeOf([] { ParseSuite(R"({"members": [{"generator": "zipf"}]})"); }, &message),
            ErrorCode::kParse);
  EXPECT_NE(message.find("/members/0/generator"), std::string::npos) << message;
  EXPECT_EQ(CodeOf([] { ParseSuite(R"({"members": [{"generator": "random", "params": {"docs": 3}}]})"); },
                   &message),
            ErrorCode::kParse);
  EXPECT_NE(message.find("/members/0/params/docs"), std::string::npos) << message;
  EXPECT_EQ(CodeOf([] { ParseSuite("{"); }), ErrorCode::kParse);
}

TEST(Bench, DefaultSuiteRuns) {
  PipelineConfig config;
  config.rounding.trials = 2;
  const Suite suite = DefaultSuite();
  const BenchResult result = RunBench(suite, config, 4);
  EXPECT_EQ(result.aggregates.back().failures, 0);
  for (const BenchRow& row : result.rows) EXPECT_TRUE(row.report.has_value()) << row.error;
}

}  // namespace
}  // namespace rdc
