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

#include "rdc/extensions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "rdc/error.h"
#include "time_indexed_program.h"

namespace rdc {
namespace {

constexpr double kSlackFloor = 1e-12;

void ReportDuplicateUsers(const std::vector<std::string>& ids, std::vector<Violation>& out) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      out.push_back({ViolationKind::kDuplicateId, "duplicate user id '" + id + "'"});
    }
  }
}

void ThrowIfInvalid(const std::vector<Violation>& violations) {
  if (!violations.empty()) throw Error(ErrorCode::kInvalidInstance, violations.front().message);
}

std::vector<int> GroupCounts(int num_users, const auto& users) {
  std::vector<int> counts;
  for (int u = 0; u < num_users; ++u) counts.push_back(static_cast<int>(users(u)));
  return counts;
}

// Satisfying time of every group (0 when never satisfied).
std::vector<std::vector<int>> GroupTimes(const GroupInstance& instance,
                                         std::span<const int> order) {
  const int n = instance.num_documents();
  CheckPermutation(order, n);
  std::vector<char> covered(instance.num_topics(), 0);
  std::vector<std::vector<int>> counts(instance.num_users()), times(instance.num_users());
  for (int u = 0; u < instance.num_users(); ++u) {
    counts[u].assign(instance.user(u).groups.size(), 0);
    times[u].assign(instance.user(u).groups.size(), 0);
  }
  for (int pos = 0; pos < n; ++pos) {
    for (int e : instance.corpus().topics_of(order[pos])) {
      if (covered[e]) continue;
      covered[e] = 1;
      for (int u = 0; u < instance.num_users(); ++u) {
        const auto& groups = instance.user(u).groups;
        for (std::size_t i = 0; i < groups.size(); ++i) {
          if (!std::binary_search(groups[i].interests.begin(), groups[i].interests.end(), e)) {
            continue;
          }
          if (++counts[u][i] >= groups[i].threshold && times[u][i] == 0) {
            times[u][i] = pos + 1;
          }
        }
      }
    }
  }
  return times;
}

// Satisfying time of every additive function (0 when never satisfied).
std::vector<std::vector<int>> FunctionTimes(const XosInstance& instance,
                                            std::span<const int> order) {
  const int n = instance.num_documents();
  CheckPermutation(order, n);
  std::vector<std::vector<int>> times(instance.num_users());
  for (int u = 0; u < instance.num_users(); ++u) {
    for (const XosFunction& f : instance.user(u).functions) {
      double sum = 0.0;
      int time = 0;
      for (int pos = 0; pos < n && time == 0; ++pos) {
        sum += f.weights[order[pos]];
        if (sum >= 1.0 - kXosTolerance) time = pos + 1;
      }
      times[u].push_back(time);
    }
  }
  return times;
}

int EarliestTime(const std::vector<int>& times) {
  int best = 0;
  for (int t : times) {
    if (t > 0 && (best == 0 || t < best)) best = t;
  }
  return best;
}

Ranking AssembleRanking(std::span<const int> order, const std::vector<std::vector<int>>& times,
                        const std::vector<std::string>& ids) {
  Ranking ranking;
  ranking.order.assign(order.begin(), order.end());
  for (std::size_t u = 0; u < times.size(); ++u) {
    const int t = EarliestTime(times[u]);
    if (t == 0) {
      throw Error(ErrorCode::kInvalidInstance, "user '" + ids[u] + "' is never satisfied");
    }
    ranking.satisfy_times.push_back(t);
    ranking.total_cost += t;
  }
  return ranking;
}

RelaxationVariables IntegralPoint(int n, std::span<const int> order,
                                  const std::vector<std::vector<int>>& times) {
  std::vector<int> groups;
  for (const auto& t : times) groups.push_back(static_cast<int>(t.size()));
  RelaxationVariables v{RelaxationLayout(n, groups), {}};
  v.values.assign(v.layout.num_variables(), 0.0);
  for (int pos = 0; pos < n; ++pos) {
    const int s = order[pos];
    v.values[v.layout.x(s, pos + 1)] = 1.0;
    for (int t = pos + 1; t <= n; ++t) v.values[v.layout.z(s, t)] = 1.0;
  }
  for (std::size_t u = 0; u < times.size(); ++u) {
    const int user = static_cast<int>(u);
    for (std::size_t i = 0; i < times[u].size(); ++i) {
      if (times[u][i] == 0) continue;
      for (int t = times[u][i]; t <= n; ++t) {
        v.values[v.layout.g(user, static_cast<int>(i), t)] = 1.0;
      }
    }
    const int first = EarliestTime(times[u]);
    if (first == 0) continue;
    for (int t = first; t <= n; ++t) v.values[v.layout.y(user, t)] = 1.0;
  }
  return v;
}

void CheckSolverCost(const ExtensionResult& result) {
  CheckInvariant(static_cast<double>(result.rounding.best.ranking.total_cost) >=
                     result.fractional.lower_bound - 1e-6,
                 "rounded cost is below the LP lower bound");
}

}  // namespace

// ---- Groups of intents ----------------------------------------------------

GroupInstance::GroupInstance(Corpus corpus, std::vector<GroupUser> users)
    : corpus_(std::move(corpus)), users_(std::move(users)) {
  for (GroupUser& user : users_) {
    for (RequirementGroup& group : user.groups) {
      std::sort(group.interests.begin(), group.interests.end());
      group.interests.erase(std::unique(group.interests.begin(), group.interests.end()),
                            group.interests.end());
      for (int e : group.interests) {
        if (e < 0 || e >= corpus_.num_topics()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "user '" + user.id + "' references topic index " + std::to_string(e));
        }
      }
    }
  }
}

GroupInstance GroupInstance::FromIndices(
    int num_topics, std::vector<std::vector<int>> doc_topics,
    std::vector<std::vector<std::pair<std::vector<int>, int>>> users) {
  std::vector<std::pair<std::vector<int>, int>> none;
  const Instance shell = Instance::FromIndices(num_topics, std::move(doc_topics), none);
  std::vector<GroupUser> list;
  for (std::size_t u = 0; u < users.size(); ++u) {
    GroupUser user{"u" + std::to_string(u + 1), {}};
    for (auto& [interests, k] : users[u]) user.groups.push_back({std::move(interests), k});
    list.push_back(std::move(user));
  }
  return GroupInstance(shell.corpus(), std::move(list));
}

GroupInstance GroupInstance::Lift(const Instance& instance) {
  std::vector<GroupUser> users;
  for (const User& u : instance.users()) users.push_back({u.id, {{u.interests, u.threshold}}});
  return GroupInstance(instance.corpus(), std::move(users));
}

std::optional<int> GroupInstance::FindUser(std::string_view id) const {
  for (std::size_t u = 0; u < users_.size(); ++u) {
    if (users_[u].id == id) return static_cast<int>(u);
  }
  return std::nullopt;
}

std::vector<Violation> Validate(const GroupInstance& instance, int group_cap) {
  std::vector<Violation> out = ValidateCorpus(instance.corpus());
  std::vector<std::string> ids;
  for (const GroupUser& user : instance.users()) {
    ids.push_back(user.id);
    const int p = static_cast<int>(user.groups.size());
    if (p == 0) {
      out.push_back({ViolationKind::kOther, "user '" + user.id + "' has no groups"});
    } else if (p > group_cap) {
      out.push_back({ViolationKind::kOther, "user '" + user.id + "' has " + std::to_string(p) +
                                                " groups, cap is " + std::to_string(group_cap)});
    }
    for (int i = 0; i < p; ++i) {
      const RequirementGroup& g = user.groups[i];
      const std::string where = "user '" + user.id + "' group " + std::to_string(i + 1);
      if (g.threshold < 1) {
        out.push_back({ViolationKind::kThresholdRange, where + ": K must be at least 1"});
      } else if (g.threshold > static_cast<int>(g.interests.size())) {
        out.push_back({ViolationKind::kThresholdRange, where + ": K exceeds |I|"});
      }
    }
  }
  ReportDuplicateUsers(ids, out);
  return out;
}

Ranking EvaluateRgc(const GroupInstance& instance, std::span<const int> order) {
  std::vector<std::string> ids;
  for (const GroupUser& u : instance.users()) ids.push_back(u.id);
  return AssembleRanking(order, GroupTimes(instance, order), ids);
}

RelaxationVariables IntegralAssignment(const GroupInstance& instance,
                                       std::span<const int> order) {
  return IntegralPoint(instance.num_documents(), order, GroupTimes(instance, order));
}

std::vector<KnapsackRow> SeparateRgc(const GroupInstance& instance,
                                     const RelaxationVariables& solution,
                                     std::span<const int> times,
                                     const RelaxationConfig& config) {
  std::vector<std::pair<double, KnapsackRow>> scored;
  for (int u = 0; u < instance.num_users(); ++u) {
    const auto& groups = instance.user(u).groups;
    for (int i = 0; i < static_cast<int>(groups.size()); ++i) {
      for (KnapsackRow& row : internal::SeparateRequirement(
               instance.corpus(), groups[i].interests, groups[i].threshold, u, i, solution,
               times, config)) {
        const double violation = row.Violation(solution);
        if (violation > config.separation_tolerance) scored.push_back({violation, std::move(row)});
      }
    }
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<KnapsackRow> rows;
  for (auto& [v, row] : scored) rows.push_back(std::move(row));
  return rows;
}

FractionalSolution SolveRgcRelaxation(const GroupInstance& instance,
                                      const ExtensionConfig& config) {
  ThrowIfInvalid(Validate(instance, config.group_cap));
  const BaseProgram base = internal::BuildTimeIndexedProgram(
      instance.num_documents(),
      GroupCounts(instance.num_users(), [&](int u) { return instance.user(u).groups.size(); }));
  const std::vector<int> times = SeparationTimes(instance.num_documents());
  auto separator = [&](const RelaxationVariables& current) {
    std::vector<internal::Cut> cuts;
    for (const KnapsackRow& row : SeparateRgc(instance, current, times, config.relaxation)) {
      cuts.push_back(internal::ToCut(row, base.layout, current));
    }
    return cuts;
  };
  return internal::RunRowGeneration(base, separator, config.relaxation);
}

ExtensionResult SolveRgc(const GroupInstance& instance, const ExtensionConfig& config) {
  ExtensionResult result;
  result.fractional = SolveRgcRelaxation(instance, config);
  Rounder rounder(instance.corpus(), result.fractional.variables, config.rounding,
                  [&instance](std::span<const int> order) { return EvaluateRgc(instance, order); });
  result.rounding = rounder.BestOf();
  CheckSolverCost(result);
  return result;
}

// ---- Max-of-additive valuations -------------------------------------------

XosInstance::XosInstance(Corpus corpus, std::vector<XosUser> users)
    : corpus_(std::move(corpus)), users_(std::move(users)) {
  for (const XosUser& user : users_) {
    for (const XosFunction& f : user.functions) {
      if (static_cast<int>(f.weights.size()) != corpus_.num_documents()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "user '" + user.id + "' has a weight vector of the wrong length");
      }
    }
  }
}

XosInstance XosInstance::FromWeights(int num_documents,
                                     std::vector<std::vector<std::vector<double>>> users) {
  std::vector<std::string> doc_ids;
  for (int s = 0; s < num_documents; ++s) doc_ids.push_back("s" + std::to_string(s + 1));
  Corpus corpus({}, std::move(doc_ids), std::vector<std::vector<int>>(num_documents));
  std::vector<XosUser> list;
  for (std::size_t u = 0; u < users.size(); ++u) {
    XosUser user{"u" + std::to_string(u + 1), {}};
    for (auto& w : users[u]) user.functions.push_back({std::move(w)});
    list.push_back(std::move(user));
  }
  return XosInstance(std::move(corpus), std::move(list));
}

std::optional<int> XosInstance::FindUser(std::string_view id) const {
  for (std::size_t u = 0; u < users_.size(); ++u) {
    if (users_[u].id == id) return static_cast<int>(u);
  }
  return std::nullopt;
}

std::vector<Violation> Validate(const XosInstance& instance, int function_cap) {
  std::vector<Violation> out = ValidateCorpus(instance.corpus());
  std::vector<std::string> ids;
  for (const XosUser& user : instance.users()) {
    ids.push_back(user.id);
    const int p = static_cast<int>(user.functions.size());
    if (p == 0) {
      out.push_back({ViolationKind::kOther, "user '" + user.id + "' has no functions"});
    } else if (p > function_cap) {
      out.push_back({ViolationKind::kOther, "user '" + user.id + "' has " + std::to_string(p) +
                                                " functions, cap is " +
                                                std::to_string(function_cap)});
    }
    double best = 0.0;
    bool bad_weight = false;
    for (const XosFunction& f : user.functions) {
      double total = 0.0;
      for (double a : f.weights) {
        bad_weight = bad_weight || !std::isfinite(a) || a < 0.0;
        total += a;
      }
      best = std::max(best, total);
    }
    if (bad_weight) {
      out.push_back({ViolationKind::kOther,
                     "user '" + user.id + "' has a negative or non-finite weight"});
    } else if (p > 0 && best < 1.0 - kXosTolerance) {
      out.push_back({ViolationKind::kOther,
                     "user '" + user.id + "' is unsatisfiable: every function sums below 1"});
    }
  }
  ReportDuplicateUsers(ids, out);
  return out;
}

Ranking EvaluateRxos(const XosInstance& instance, std::span<const int> order) {
  std::vector<std::string> ids;
  for (const XosUser& u : instance.users()) ids.push_back(u.id);
  return AssembleRanking(order, FunctionTimes(instance, order), ids);
}

RelaxationVariables IntegralAssignment(const XosInstance& instance,
                                       std::span<const int> order) {
  return IntegralPoint(instance.num_documents(), order, FunctionTimes(instance, order));
}

double XosKnapsackRow::Violation(const RelaxationVariables& v) const {
  double rhs = 0.0;
  for (const auto& [s, c] : coefficients) rhs += c * v.z(s, time);
  return slack * v.g(user, function, time) - rhs;
}

lp::Row XosKnapsackRow::ToRow(const RelaxationLayout& layout) const {
  lp::Row row;
  row.comparator = lp::Comparator::kLessEqual;
  row.rhs = 0.0;
  row.terms.push_back({layout.g(user, function, time), slack});
  for (const auto& [s, c] : coefficients) row.terms.push_back({layout.z(s, time), -c});
  row.name = "xkc_" + std::to_string(user + 1) + "_" + std::to_string(function + 1) + "_" +
             std::to_string(time) + "_f" + std::to_string(fixed.size());
  return row;
}

XosKnapsackRow MakeXosKnapsackRow(const XosInstance& instance, int user, int function,
                                  int time, std::span<const int> fixed) {
  const int n = instance.num_documents();
  if (user < 0 || user >= instance.num_users() || function < 0 ||
      function >= static_cast<int>(instance.user(user).functions.size())) {
    throw Error(ErrorCode::kInvalidArgument, "unknown user or function index");
  }
  if (time < 1 || time > n) throw Error(ErrorCode::kInvalidArgument, "time out of range");
  XosKnapsackRow row;
  row.user = user;
  row.function = function;
  row.time = time;
  row.fixed.assign(fixed.begin(), fixed.end());
  std::sort(row.fixed.begin(), row.fixed.end());
  if (std::adjacent_find(row.fixed.begin(), row.fixed.end()) != row.fixed.end()) {
    throw Error(ErrorCode::kInvalidArgument, "F has repeated documents");
  }
  double used = 0.0;
  for (int s : row.fixed) {
    if (s < 0 || s >= n) throw Error(ErrorCode::kInvalidArgument, "unknown document index");
    used += instance.weight(user, function, s);
  }
  row.slack = 1.0 - used;
  if (row.slack <= kSlackFloor) {
    throw Error(ErrorCode::kInvalidArgument, "A(F) must stay below 1");
  }
  for (int s = 0; s < n; ++s) {
    const double a = instance.weight(user, function, s);
    if (a >= row.slack) {
      row.t1.push_back(s);
      row.coefficients.push_back({s, row.slack});
    } else if (a > 0.0) {
      row.coefficients.push_back({s, a});
    }
  }
  return row;
}

std::vector<XosKnapsackRow> SeparateRxos(const XosInstance& instance,
                                         const RelaxationVariables& solution,
                                         std::span<const int> times,
                                         const RelaxationConfig& config) {
  const int n = instance.num_documents();
  std::vector<std::pair<double, XosKnapsackRow>> scored;
  for (int u = 0; u < instance.num_users(); ++u) {
    for (int i = 0; i < static_cast<int>(instance.user(u).functions.size()); ++i) {
      for (int t : times) {
        std::vector<std::vector<int>> seen;
        auto consider = [&](std::vector<int> fixed, SeparationFamily family) {
          std::sort(fixed.begin(), fixed.end());
          if (std::find(seen.begin(), seen.end(), fixed) != seen.end()) return;
          seen.push_back(fixed);
          XosKnapsackRow row = MakeXosKnapsackRow(instance, u, i, t, fixed);
          row.family = family;
          const double violation = row.Violation(solution);
          if (violation > config.separation_tolerance) scored.push_back({violation, std::move(row)});
        };
        // Affordable prefix of the documents rounding would surely pick.
        std::vector<int> sure;
        for (int s = 0; s < n; ++s) {
          if (config.scale * solution.z(s, t) >= 1.0 - 1e-9) sure.push_back(s);
        }
        std::stable_sort(sure.begin(), sure.end(), [&](int a, int b) {
          return solution.z(a, t) > solution.z(b, t);
        });
        std::vector<int> fixed;
        double used = 0.0;
        for (int s : sure) {
          const double a = instance.weight(u, i, s);
          if (used + a >= 1.0 - kSlackFloor) break;
          used += a;
          fixed.push_back(s);
        }
        consider(fixed, SeparationFamily::kNearlyCovered);
        if (!config.prefix_family) continue;
        std::vector<int> ranked(n);
        std::iota(ranked.begin(), ranked.end(), 0);
        auto key = [&](int s) { return instance.weight(u, i, s) * (1.0 - solution.z(s, t)); };
        std::stable_sort(ranked.begin(), ranked.end(),
                         [&](int a, int b) { return key(a) > key(b); });
        fixed.clear();
        used = 0.0;
        consider(fixed, SeparationFamily::kCoveragePrefix);
        for (int s : ranked) {
          const double a = instance.weight(u, i, s);
          if (used + a >= 1.0 - kSlackFloor) break;
          used += a;
          fixed.push_back(s);
          consider(fixed, SeparationFamily::kCoveragePrefix);
        }
      }
    }
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<XosKnapsackRow> rows;
  for (auto& [v, row] : scored) rows.push_back(std::move(row));
  return rows;
}

FractionalSolution SolveRxosRelaxation(const XosInstance& instance,
                                       const ExtensionConfig& config) {
  ThrowIfInvalid(Validate(instance, config.group_cap));
  const BaseProgram base = internal::BuildTimeIndexedProgram(
      instance.num_documents(),
      GroupCounts(instance.num_users(), [&](int u) { return instance.user(u).functions.size(); }));
  const std::vector<int> times = SeparationTimes(instance.num_documents());
  auto separator = [&](const RelaxationVariables& current) {
    std::vector<internal::Cut> cuts;
    for (const XosKnapsackRow& row : SeparateRxos(instance, current, times, config.relaxation)) {
      cuts.push_back({row.user, row.function, row.time, row.fixed, row.Violation(current),
                      row.family, row.ToRow(base.layout)});
    }
    return cuts;
  };
  return internal::RunRowGeneration(base, separator, config.relaxation);
}

ExtensionResult SolveRxos(const XosInstance& instance, const ExtensionConfig& config) {
  ExtensionResult result;
  result.fractional = SolveRxosRelaxation(instance, config);
  Rounder rounder(instance.corpus(), result.fractional.variables, config.rounding,
                  [&instance](std::span<const int> order) { return EvaluateRxos(instance, order); },
                  /*with_cover=*/false);
  result.rounding = rounder.BestOf();
  CheckSolverCost(result);
  return result;
}

}  // namespace rdc
