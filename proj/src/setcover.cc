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

#include <algorithm>
#include <functional>
#include <string>
#include <utility>

#include "rdc/error.h"
#include "rdc/lp_engine.h"

namespace rdc::setcover {
namespace {

struct LpCover {
  double value = 0.0;
  std::vector<double> x;  // per set
};

std::vector<int> Restrict(const std::vector<int>& set, const std::vector<char>& in_target) {
  std::vector<int> out;
  for (int e : set) {
    if (e >= 0 && e < static_cast<int>(in_target.size()) && in_target[e]) out.push_back(e);
  }
  return out;
}

std::vector<char> TargetMask(const CoverInstance& instance) {
  std::vector<char> mask(instance.num_topics, 0);
  for (int e : instance.target) mask[e] = 1;
  return mask;
}

// Sets containing each target topic, aligned with instance.target.
std::vector<std::vector<int>> Frequencies(const CoverInstance& instance) {
  std::vector<int> position(instance.num_topics, -1);
  for (std::size_t i = 0; i < instance.target.size(); ++i) {
    position[instance.target[i]] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> owners(instance.target.size());
  for (int s = 0; s < instance.num_sets(); ++s) {
    for (int e : instance.sets[s]) {
      if (e >= 0 && e < instance.num_topics && position[e] >= 0) {
        owners[position[e]].push_back(s);
      }
    }
  }
  for (std::size_t i = 0; i < owners.size(); ++i) {
    if (owners[i].empty()) {
      throw Error(ErrorCode::kInfeasible,
                  "target topic " + std::to_string(instance.target[i]) +
                      " is in no set");
    }
  }
  return owners;
}

LpCover SolveCoverLp(const CoverInstance& instance) {
  const auto owners = Frequencies(instance);
  LpCover result;
  result.x.assign(instance.num_sets(), 0.0);
  if (instance.target.empty()) return result;
  lp::LinearProgram program;
  std::vector<int> var_of(instance.num_sets(), -1);
  for (const auto& sets : owners) {
    for (int s : sets) {
      if (var_of[s] < 0) {
        var_of[s] = program.AddVariable(0.0, lp::kInfinity, 1.0,
                                        "x_" + std::to_string(s + 1));
      }
    }
  }
  for (std::size_t i = 0; i < owners.size(); ++i) {
    lp::Row row{{}, lp::Comparator::kGreaterEqual, 1.0,
                "cover_" + std::to_string(instance.target[i] + 1)};
    for (int s : owners[i]) row.terms.push_back({var_of[s], 1.0});
    program.AddRow(std::move(row));
  }
  const lp::LpSolution solution = lp::Solve(program);
  CheckInvariant(solution.status == lp::SolveStatus::kOptimal,
                 "cover LP did not solve to optimality");
  result.value = solution.objective;
  for (int s = 0; s < instance.num_sets(); ++s) {
    if (var_of[s] >= 0) result.x[s] = solution.values[var_of[s]];
  }
  return result;
}

CoverResult Greedy(const CoverInstance& instance, double lp_value) {
  const std::vector<char> in_target = TargetMask(instance);
  CoverResult result;
  result.strategy = Strategy::kGreedy;
  result.lp_value = lp_value;
  std::vector<std::vector<int>> restricted;
  int largest = 0;
  for (const auto& set : instance.sets) {
    restricted.push_back(Restrict(set, in_target));
    largest = std::max(largest, static_cast<int>(restricted.back().size()));
  }
  std::vector<char> covered(instance.num_topics, 0);
  int remaining = static_cast<int>(instance.target.size());
  while (remaining > 0) {
    int best = -1;
    int best_gain = 0;
    for (int s = 0; s < instance.num_sets(); ++s) {
      int gain = 0;
      for (int e : restricted[s]) gain += covered[e] ? 0 : 1;
      if (gain > best_gain) {
        best = s;
        best_gain = gain;
      }
    }
    CheckInvariant(best >= 0, "greedy cover stalled");
    for (int e : restricted[best]) covered[e] = 1;
    remaining -= best_gain;
    result.chosen.push_back(best);
  }
  std::sort(result.chosen.begin(), result.chosen.end());
  result.certified_rho = instance.target.empty() ? 1.0 : Harmonic(largest);
  return result;
}

CoverResult Threshold(const CoverInstance& instance, const LpCover& lp) {
  const auto owners = Frequencies(instance);
  CoverResult result;
  result.strategy = Strategy::kPrimalDual;
  result.lp_value = lp.value;
  if (instance.target.empty()) return result;
  std::size_t d = 0;
  for (const auto& sets : owners) d = std::max(d, sets.size());
  const double cut = 1.0 / static_cast<double>(d) - 1e-9;
  for (int s = 0; s < instance.num_sets(); ++s) {
    if (lp.x[s] >= cut) result.chosen.push_back(s);
  }
  result.certified_rho = static_cast<double>(d);
  return result;
}

CoverResult Disjoint(const CoverInstance& instance) {
  const std::vector<char> in_target = TargetMask(instance);
  CoverResult result;
  result.strategy = Strategy::kDisjoint;
  for (int s = 0; s < instance.num_sets(); ++s) {
    if (!Restrict(instance.sets[s], in_target).empty()) result.chosen.push_back(s);
  }
  result.lp_value = static_cast<double>(result.chosen.size());
  result.certified_rho = 1.0;
  return result;
}

}  // namespace

CoverInstance CoverInstance::FromCorpus(const Corpus& corpus, std::span<const int> target) {
  CoverInstance instance;
  instance.num_topics = corpus.num_topics();
  for (int s = 0; s < corpus.num_documents(); ++s) {
    instance.sets.push_back(corpus.topics_of(s));
  }
  instance.target.assign(target.begin(), target.end());
  std::sort(instance.target.begin(), instance.target.end());
  instance.target.erase(std::unique(instance.target.begin(), instance.target.end()),
                        instance.target.end());
  return instance;
}

std::string_view ToString(Strategy strategy) {
  switch (strategy) {
    case Strategy::kGreedy: return "greedy";
    case Strategy::kPrimalDual: return "primal-dual";
    case Strategy::kExact: return "exact";
    case Strategy::kDisjoint: return "disjoint";
    case Strategy::kAuto: return "auto";
    case Strategy::kVcDimension: return "vc-dimension";
    case Strategy::kGeometric: return "geometric";
  }
  return "unknown";
}

Strategy ParseStrategy(std::string_view name) {
  for (Strategy s : {Strategy::kGreedy, Strategy::kPrimalDual, Strategy::kExact,
                     Strategy::kDisjoint, Strategy::kAuto, Strategy::kVcDimension,
                     Strategy::kGeometric}) {
    if (ToString(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown set cover strategy '" + std::string(name) + "'");
}

double Harmonic(int k) {
  double total = 0.0;
  for (int i = 1; i <= k; ++i) total += 1.0 / i;
  return total;
}

double CoverLpValue(const CoverInstance& instance) { return SolveCoverLp(instance).value; }

CoverResult GreedyCover(const CoverInstance& instance) {
  return Greedy(instance, SolveCoverLp(instance).value);
}

CoverResult PrimalDualCover(const CoverInstance& instance) {
  return Threshold(instance, SolveCoverLp(instance));
}

bool IsDisjointOnTarget(const CoverInstance& instance) {
  for (const auto& sets : Frequencies(instance)) {
    if (sets.size() != 1) return false;
  }
  return true;
}

CoverResult DisjointCover(const CoverInstance& instance) {
  if (!IsDisjointOnTarget(instance)) {
    throw Error(ErrorCode::kInvalidArgument,
                "sets restricted to the target are not pairwise disjoint");
  }
  return Disjoint(instance);
}

CoverResult ExactCover(const CoverInstance& instance, int size_cap) {
  if (instance.num_sets() > size_cap) {
    throw Error(ErrorCode::kCapExceeded,
                "exact cover supports at most " + std::to_string(size_cap) +
                    " sets, got " + std::to_string(instance.num_sets()));
  }
  const auto owners = Frequencies(instance);
  const LpCover lp = SolveCoverLp(instance);
  CoverResult incumbent = Greedy(instance, lp.value);
  std::vector<int> best = incumbent.chosen;

  const int m = static_cast<int>(instance.target.size());
  std::vector<int> position(instance.num_topics, -1);
  for (int i = 0; i < m; ++i) position[instance.target[i]] = i;
  std::vector<std::vector<int>> members(instance.num_sets());
  for (int s = 0; s < instance.num_sets(); ++s) {
    for (int e : instance.sets[s]) {
      if (e >= 0 && e < instance.num_topics && position[e] >= 0) {
        members[s].push_back(position[e]);
      }
    }
  }
  std::vector<int> cover_count(m, 0);
  std::vector<int> chosen;
  std::function<void(int)> search = [&](int uncovered) {
    if (uncovered == 0) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    if (chosen.size() + 1 >= best.size()) return;
    int pick = -1;
    for (int i = 0; i < m; ++i) {
      if (cover_count[i] == 0 &&
          (pick < 0 || owners[i].size() < owners[pick].size())) {
        pick = i;
      }
    }
    for (int s : owners[pick]) {
      int fresh = 0;
      for (int i : members[s]) fresh += cover_count[i]++ == 0 ? 1 : 0;
      chosen.push_back(s);
      search(uncovered - fresh);
      chosen.pop_back();
      for (int i : members[s]) --cover_count[i];
    }
  };
  search(m);

  CoverResult result;
  result.strategy = Strategy::kExact;
  result.chosen = best;
  std::sort(result.chosen.begin(), result.chosen.end());
  result.lp_value = lp.value;
  result.certified_rho =
      lp.value > 0.0 ? static_cast<double>(result.chosen.size()) / lp.value : 1.0;
  return result;
}

CoverResult AutoCover(const CoverInstance& instance, Strategy strategy) {
  CoverResult result;
  switch (strategy) {
    case Strategy::kGreedy: result = GreedyCover(instance); break;
    case Strategy::kPrimalDual: result = PrimalDualCover(instance); break;
    case Strategy::kExact: result = ExactCover(instance); break;
    case Strategy::kDisjoint: result = DisjointCover(instance); break;
    case Strategy::kVcDimension:
    case Strategy::kGeometric:
      throw Error(ErrorCode::kUnavailable,
                  "strategy not available: " + std::string(ToString(strategy)));
    case Strategy::kAuto: {
      if (IsDisjointOnTarget(instance)) {
        result = Disjoint(instance);
        break;
      }
      const LpCover lp = SolveCoverLp(instance);
      CoverResult greedy = Greedy(instance, lp.value);
      CoverResult threshold = Threshold(instance, lp);
      result = greedy.certified_rho * greedy.lp_value <=
                       threshold.certified_rho * threshold.lp_value
                   ? std::move(greedy)
                   : std::move(threshold);
      break;
    }
  }
  CheckCover(instance, result);
  return result;
}

void CheckCover(const CoverInstance& instance, const CoverResult& result) {
  std::vector<char> covered(instance.num_topics, 0);
  for (int s : result.chosen) {
    CheckInvariant(s >= 0 && s < instance.num_sets(), "cover picked an unknown set");
    for (int e : instance.sets[s]) {
      if (e >= 0 && e < instance.num_topics) covered[e] = 1;
    }
  }
  for (int e : instance.target) {
    CheckInvariant(covered[e] != 0, "cover misses target topic " + std::to_string(e));
  }
  CheckInvariant(static_cast<double>(result.chosen.size()) <=
                     result.certified_rho * result.lp_value + kCertificateTolerance,
                 "cover breaks its certified ratio");
}

}  // namespace rdc::setcover
