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

#ifndef RDC_PIPELINE_H_
#define RDC_PIPELINE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdc/baselines.h"
#include "rdc/extensions.h"
#include "rdc/generators.h"
#include "rdc/instance_io.h"
#include "rdc/lp_engine.h"
#include "rdc/relaxation.h"
#include "rdc/rounding.h"

namespace rdc {

// Slack allowed when comparing LP bounds with integral costs.
inline constexpr double kChainTolerance = 1e-6;

struct PipelineConfig {
  PipelineConfig() { rounding.trials = 10; }

  RelaxationConfig relaxation;
  RoundingConfig rounding;
  int oracle_cap = kDefaultOracleCap;  // oracle runs only when |S| <= oracle_cap
  int group_cap = kDefaultGroupCap;
  bool timing = false;                 // millis stays 0 unless set
  bool embed_instance = true;          // copy the instance into the report
};

struct RunReport {
  std::string name;
  InstanceKind kind = InstanceKind::kRdc;
  int documents = 0;
  int topics = 0;
  int users = 0;

  double lp_objective = 0.0;  // Σ(1 - y*)
  double lower_bound = 0.0;   // lp_objective + |U|
  double half_bound = 0.0;    // (1/2) Σ t_u*
  int lp_rows = 0;
  int lp_iterations = 0;
  std::int64_t lp_pivots = 0;

  std::int64_t solver_cost = 0;
  std::vector<int> solver_order;
  int best_trial = 0;
  std::vector<std::int64_t> trial_costs;
  std::vector<RoundLog> best_rounds;
  double rho_run = 0.0;
  int overflowed_rounds = 0;
  int total_rounds = 0;
  double overflow_rate = 0.0;
  int h_bound_violations = 0;
  // (user, round) pairs over all trials with a non-overflowed round and
  // 2^k >= t_u*, and how many of them left the user unsatisfied by that
  // round's selection alone.
  int satisfaction_checks = 0;
  int satisfaction_failures = 0;

  std::optional<std::int64_t> oracle_cost;
  std::vector<int> oracle_order;
  std::optional<std::int64_t> prp_cost;
  std::optional<std::int64_t> greedy_satisfy_cost;
  std::optional<std::int64_t> greedy_coverage_cost;

  double ratio = 1.0;  // solver_cost / lower_bound
  double millis = 0.0;
  std::uint64_t seed = 0;
  PipelineConfig config;
  std::string instance_json;  // set when config.embed_instance

  // Smallest greedy cost, if any greedy ran.
  std::optional<std::int64_t> greedy_cost() const;
};

// Relaxation for any instance kind.
FractionalSolution SolveAnyRelaxation(const AnyInstance& instance, const PipelineConfig& config);

// The base program plus every row the solution generated, as one LP.
lp::LinearProgram FinalProgram(const AnyInstance& instance, const FractionalSolution& solution);

// Throws kInvalidArgument unless `order` is a permutation of the documents.
Ranking EvaluateAny(const AnyInstance& instance, std::span<const int> order);

// True when the documents alone satisfy user u.
bool SatisfiedBy(const AnyInstance& instance, int user, std::span<const int> docs);

// Relaxation, best-of rounding, baselines, then the ordering checks
//   half_bound <= lp_objective, lower_bound <= solver,
//   lower_bound <= oracle <= solver, prp, greedy.
// A broken check throws kInvariant.
RunReport RunPipeline(const AnyInstance& instance, const PipelineConfig& config,
                      std::string name = "instance");

// JSON text, with round logs of the best trial when `rounds` is set.
std::string ReportJson(const RunReport& report, bool rounds = true);

// ---- bench ------------------------------------------------------------------

struct SuiteMember {
  std::string group;  // aggregation key; defaults to the generator name
  GeneratorKind generator = GeneratorKind::kRandom;
  GeneratorParams params;
  std::uint64_t seed = 0;  // member i uses seed + i
  int count = 1;
  std::optional<int> trials;
};

struct Suite {
  std::string name = "suite";
  std::vector<SuiteMember> members;
};

// {"name": .., "members": [{"generator": "random", "count": 50, "seed": 1,
//   "group": .., "trials": .., "params": {"documents": .., ...}}]}
// Throws kParse with a location on malformed input.
Suite ParseSuite(std::string_view text);

// A small mixed suite used when no suite file is given.
Suite DefaultSuite();

struct BenchRow {
  std::string name;
  std::string group;
  std::uint64_t seed = 0;
  std::optional<RunReport> report;
  std::string error;  // set when the member failed
};

struct BenchAggregate {
  std::string group;  // "all" for the whole suite
  int instances = 0;
  int failures = 0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_overflow_rate = 0.0;
  double max_overflow_rate = 0.0;
  double satisfaction_failure_rate = 0.0;  // pooled over the group
  int h_bound_violations = 0;
  double mean_lp_bound = 0.0;
  double mean_solver_cost = 0.0;
};

struct BenchResult {
  std::string suite;
  std::vector<BenchRow> rows;
  std::vector<BenchAggregate> aggregates;  // groups in first-seen order, then "all"
};

// Members may run on `jobs` threads; the result does not depend on it.
BenchResult RunBench(const Suite& suite, const PipelineConfig& config, int jobs = 1);

inline constexpr std::string_view kCsvHeader =
    "instance,n_docs,n_topics,n_users,lp_bound,half_bound,solver_cost,oracle_cost,"
    "prp_cost,greedy_cost,ratio,overflow_rate,seed,millis";

// One row per member, then "mean:<group>" and "max:<group>" rows.
void WriteCsv(const BenchResult& result, std::ostream& out);
std::string BenchJson(const BenchResult& result);

}  // namespace rdc

#endif  // RDC_PIPELINE_H_
