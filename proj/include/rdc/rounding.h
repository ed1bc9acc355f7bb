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

#ifndef RDC_ROUNDING_H_
#define RDC_ROUNDING_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "rdc/core_model.h"
#include "rdc/relaxation.h"
#include "rdc/setcover.h"

namespace rdc {

enum class WithinRoundOrder {
  kIndex,
  // Largest new topic coverage first. Experimental: the cost guarantee does
  // not cover it.
  kGreedy,
};

struct RoundingConfig {
  double scale = 50.0;
  double overflow_base = 70.0;
  int trials = 1;
  std::uint64_t seed = 0;
  setcover::Strategy strategy = setcover::Strategy::kAuto;
  WithinRoundOrder within_round = WithinRoundOrder::kIndex;
};

// Throws kInvalidArgument on scale < 1, overflow_base <= 0 or trials < 1.
void ValidateConfig(const RoundingConfig& config);

// ceil(log2 n) + 1.
int NumRounds(int num_documents);

// The sampling-independent part of round k.
struct RoundPlan {
  int k = 0;
  std::int64_t budget = 1;          // 2^k
  int t = 1;                        // min(2^k, n)
  std::vector<int> nearly_covered;  // P_k
  bool uses_cover = true;
  setcover::CoverResult cover;      // H_k, empty when !uses_cover
  std::vector<double> probability;  // per document; 0 for members of H_k
  double threshold = 0.0;           // (overflow_base + rho_k) * 2^k
  bool h_bound_ok = true;           // |H_k| <= rho_k * 2^k
};

struct RoundLog {
  int k = 0;
  int t = 1;
  int nearly_covered = 0;       // |P_k|
  std::vector<int> cover;       // H_k
  double certified_rho = 0.0;
  double cover_lp = 0.0;
  std::vector<int> sampled;     // G_k
  bool overflowed = false;
  double threshold = 0.0;
  bool h_bound_ok = true;
  // H_k ∪ G_k in emission order, or empty when overflowed.
  std::vector<int> selected;
};

struct TrialResult {
  int trial = 0;
  Ranking ranking;
  std::vector<RoundLog> rounds;
  double rho = 0.0;  // max certified_rho over the rounds
};

struct BestOfResult {
  TrialResult best;
  std::vector<std::int64_t> trial_costs;
  // Every trial, in trial order; `best` is a copy of one of them.
  std::vector<TrialResult> trials;
  double rho = 0.0;  // max over all trials and rounds
  int overflowed_rounds = 0;
  int total_rounds = 0;
  int h_bound_violations = 0;
};

using RankingEvaluator = std::function<Ranking(std::span<const int> order)>;

// Doubling-round rounding of a fractional solution. Plans (P_k and H_k) are
// computed once; trials only redo the sampling. `with_cover` false drops
// the set-cover step and uses overflow_base * 2^k as the threshold.
class Rounder {
 public:
  Rounder(const Corpus& corpus, const RelaxationVariables& solution,
          RoundingConfig config, RankingEvaluator evaluate, bool with_cover = true);

  const std::vector<RoundPlan>& plans() const { return plans_; }
  const RoundingConfig& config() const { return config_; }

  // `emitted` marks documents placed by earlier rounds; greedy ordering uses
  // it, index ordering ignores it.
  RoundLog RunRound(int k, int trial, std::span<const char> emitted) const;
  TrialResult RunTrial(int trial) const;
  BestOfResult BestOf() const;

 private:
  const Corpus* corpus_;
  RoundingConfig config_;
  RankingEvaluator evaluate_;
  std::vector<RoundPlan> plans_;
};

RoundPlan PlanRound(const Corpus& corpus, const RelaxationVariables& solution,
                    int k, const RoundingConfig& config, bool with_cover = true);

// Uniform draws in [0, 1) for trial `trial`, round `k`.
class RoundStream {
 public:
  RoundStream(std::uint64_t seed, int trial, int k);
  double Next();

 private:
  std::mt19937_64 engine_;
};

TrialResult RoundSolution(const Instance& instance, const FractionalSolution& solution,
                          const RoundingConfig& config, int trial = 0);
BestOfResult BestOf(const Instance& instance, const FractionalSolution& solution,
                    const RoundingConfig& config);

// "round k=0 t=1 P=3 H=1 rho=1 G=4 overflow=0"
void WriteRoundLog(const RoundLog& log, std::ostream& out);

}  // namespace rdc

#endif  // RDC_ROUNDING_H_
