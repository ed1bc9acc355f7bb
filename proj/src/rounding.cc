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

#include "rdc/rounding.h"

#include <algorithm>
#include <iterator>
#include <ostream>
#include <string>
#include <utility>

#include "rdc/error.h"

namespace rdc {
namespace {

constexpr double kNearlyCoveredSlack = 1e-9;

std::vector<int> GreedyOrder(const Corpus& corpus, std::vector<int> docs,
                             std::span<const char> emitted) {
  std::vector<char> covered(corpus.num_topics(), 0);
  for (int s = 0; s < corpus.num_documents(); ++s) {
    if (s < static_cast<int>(emitted.size()) && emitted[s]) {
      for (int e : corpus.topics_of(s)) covered[e] = 1;
    }
  }
  std::vector<int> fresh, old;
  for (int s : docs) {
    (s < static_cast<int>(emitted.size()) && emitted[s] ? old : fresh).push_back(s);
  }
  std::vector<int> out;
  while (!fresh.empty()) {
    std::size_t best = 0;
    int best_gain = -1;
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      int gain = 0;
      for (int e : corpus.topics_of(fresh[i])) gain += covered[e] ? 0 : 1;
      if (gain > best_gain || (gain == best_gain && fresh[i] < fresh[best])) {
        best = i;
        best_gain = gain;
      }
    }
    for (int e : corpus.topics_of(fresh[best])) covered[e] = 1;
    out.push_back(fresh[best]);
    fresh.erase(fresh.begin() + static_cast<std::ptrdiff_t>(best));
  }
  out.insert(out.end(), old.begin(), old.end());
  return out;
}

}  // namespace

void ValidateConfig(const RoundingConfig& config) {
  if (!(config.scale >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "scale must be at least 1");
  }
  if (!(config.overflow_base > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "overflow base must be positive");
  }
  if (config.trials < 1) {
    throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  }
}

int NumRounds(int num_documents) {
  int k = 0;
  while ((std::int64_t{1} << k) < num_documents) ++k;
  return k + 1;
}

RoundStream::RoundStream(std::uint64_t seed, int trial, int k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(k)};
  engine_.seed(seq);
}

double RoundStream::Next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

RoundPlan PlanRound(const Corpus& corpus, const RelaxationVariables& solution, int k,
                    const RoundingConfig& config, bool with_cover) {
  const int n = corpus.num_documents();
  RoundPlan plan;
  plan.k = k;
  plan.budget = std::int64_t{1} << k;
  plan.t = static_cast<int>(std::min<std::int64_t>(plan.budget, n));
  plan.uses_cover = with_cover;

  std::vector<double> z(n);
  for (int s = 0; s < n; ++s) z[s] = std::clamp(solution.z(s, plan.t), 0.0, 1.0);

  if (with_cover) {
    for (int e = 0; e < corpus.num_topics(); ++e) {
      double mass = 0.0;
      for (int s : corpus.documents_with(e)) mass += z[s];
      if (config.scale * mass >= 1.0 - kNearlyCoveredSlack) plan.nearly_covered.push_back(e);
    }
    const auto cover_instance = setcover::CoverInstance::FromCorpus(corpus, plan.nearly_covered);
    try {
      plan.cover = setcover::AutoCover(cover_instance, config.strategy);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasible) throw;
      throw Error(ErrorCode::kInvariant, std::string("nearly covered set: ") + e.what());
    }
  } else {
    plan.cover.certified_rho = 0.0;
  }

  std::vector<char> in_cover(n, 0);
  for (int s : plan.cover.chosen) in_cover[s] = 1;
  plan.probability.assign(n, 0.0);
  for (int s = 0; s < n; ++s) {
    if (!in_cover[s]) plan.probability[s] = std::min(1.0, config.scale * z[s]);
  }
  const double rho = with_cover ? plan.cover.certified_rho : 0.0;
  plan.threshold = (config.overflow_base + rho) * static_cast<double>(plan.budget);
  plan.h_bound_ok = static_cast<double>(plan.cover.chosen.size()) <=
                    rho * static_cast<double>(plan.budget) + setcover::kCertificateTolerance;
  return plan;
}

Rounder::Rounder(const Corpus& corpus, const RelaxationVariables& solution,
                 RoundingConfig config, RankingEvaluator evaluate, bool with_cover)
    : corpus_(&corpus), config_(std::move(config)), evaluate_(std::move(evaluate)) {
  ValidateConfig(config_);
  if (solution.layout.num_documents() != corpus.num_documents()) {
    throw Error(ErrorCode::kInvalidArgument, "solution does not match the corpus");
  }
  const int rounds = NumRounds(corpus.num_documents());
  for (int k = 0; k < rounds; ++k) {
    plans_.push_back(PlanRound(corpus, solution, k, config_, with_cover));
  }
}

RoundLog Rounder::RunRound(int k, int trial, std::span<const char> emitted) const {
  const RoundPlan& plan = plans_.at(k);
  const int n = corpus_->num_documents();
  RoundLog log;
  log.k = k;
  log.t = plan.t;
  log.nearly_covered = static_cast<int>(plan.nearly_covered.size());
  log.cover = plan.cover.chosen;
  log.certified_rho = plan.cover.certified_rho;
  log.cover_lp = plan.cover.lp_value;
  log.threshold = plan.threshold;
  log.h_bound_ok = plan.h_bound_ok;

  RoundStream stream(config_.seed, trial, k);
  for (int s = 0; s < n; ++s) {
    const double draw = stream.Next();
    if (draw < plan.probability[s]) log.sampled.push_back(s);
  }
  std::vector<int> chosen;
  std::set_union(log.cover.begin(), log.cover.end(), log.sampled.begin(), log.sampled.end(),
                 std::back_inserter(chosen));
  log.overflowed = static_cast<double>(chosen.size()) > plan.threshold;
  if (!log.overflowed) {
    log.selected = config_.within_round == WithinRoundOrder::kGreedy
                       ? GreedyOrder(*corpus_, std::move(chosen), emitted)
                       : std::move(chosen);
  }
  return log;
}

TrialResult Rounder::RunTrial(int trial) const {
  const int n = corpus_->num_documents();
  TrialResult result;
  result.trial = trial;
  std::vector<char> emitted(n, 0);
  std::vector<std::vector<int>> selections;
  for (int k = 0; k < static_cast<int>(plans_.size()); ++k) {
    RoundLog log = RunRound(k, trial, emitted);
    for (int s : log.selected) emitted[s] = 1;
    selections.push_back(log.selected);
    if (plans_[k].uses_cover) result.rho = std::max(result.rho, log.certified_rho);
    result.rounds.push_back(std::move(log));
  }
  const std::vector<int> order =
      CompleteRanking(n, selections, config_.within_round == WithinRoundOrder::kIndex);
  result.ranking = evaluate_(order);
  return result;
}

BestOfResult Rounder::BestOf() const {
  BestOfResult out;
  for (int trial = 0; trial < config_.trials; ++trial) {
    TrialResult result = RunTrial(trial);
    out.trial_costs.push_back(result.ranking.total_cost);
    out.rho = std::max(out.rho, result.rho);
    for (const RoundLog& log : result.rounds) {
      ++out.total_rounds;
      out.overflowed_rounds += log.overflowed ? 1 : 0;
      out.h_bound_violations += log.h_bound_ok ? 0 : 1;
    }
    out.trials.push_back(std::move(result));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.trials.size(); ++i) {
    if (out.trial_costs[i] < out.trial_costs[best]) best = i;
  }
  out.best = out.trials[best];
  return out;
}

TrialResult RoundSolution(const Instance& instance, const FractionalSolution& solution,
                          const RoundingConfig& config, int trial) {
  Rounder rounder(instance.corpus(), solution.variables, config,
                  [&instance](std::span<const int> order) { return Evaluate(instance, order); });
  return rounder.RunTrial(trial);
}

BestOfResult BestOf(const Instance& instance, const FractionalSolution& solution,
                    const RoundingConfig& config) {
  Rounder rounder(instance.corpus(), solution.variables, config,
                  [&instance](std::span<const int> order) { return Evaluate(instance, order); });
  return rounder.BestOf();
}

void WriteRoundLog(const RoundLog& log, std::ostream& out) {
  out << "round k=" << log.k << " t=" << log.t << " P=" << log.nearly_covered
      << " H=" << log.cover.size() << " rho=" << log.certified_rho
      << " G=" << log.sampled.size() << " overflow=" << (log.overflowed ? 1 : 0) << '\n';
}

}  // namespace rdc
