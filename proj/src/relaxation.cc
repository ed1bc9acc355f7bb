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

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>

#include "rdc/error.h"
#include "time_indexed_program.h"

namespace rdc {

RelaxationLayout::RelaxationLayout(int num_documents, std::vector<int> groups_per_user)
    : n_(num_documents), groups_(std::move(groups_per_user)) {
  int next = 2 * n_ * n_ + num_users() * n_;
  group_base_.assign(groups_.size(), -1);
  for (std::size_t u = 0; u < groups_.size(); ++u) {
    if (groups_[u] < 1) {
      throw Error(ErrorCode::kInvalidArgument, "every user needs at least one group");
    }
    if (groups_[u] == 1) continue;
    group_base_[u] = next;
    next += groups_[u] * n_;
  }
  num_vars_ = next;
}

std::vector<double> RelaxationVariables::UserCurve(int u) const {
  std::vector<double> curve;
  for (int t = 1; t <= layout.num_documents(); ++t) curve.push_back(y(u, t));
  return curve;
}

RelaxationVariables IntegralAssignment(const Instance& instance,
                                       std::span<const int> order) {
  const Ranking ranking = Evaluate(instance, order);
  const int n = instance.num_documents();
  RelaxationVariables v{RelaxationLayout(n, std::vector<int>(instance.num_users(), 1)), {}};
  v.values.assign(v.layout.num_variables(), 0.0);
  for (int pos = 0; pos < n; ++pos) {
    const int s = order[pos];
    v.values[v.layout.x(s, pos + 1)] = 1.0;
    for (int t = pos + 1; t <= n; ++t) v.values[v.layout.z(s, t)] = 1.0;
  }
  for (int u = 0; u < instance.num_users(); ++u) {
    for (int t = ranking.satisfy_times[u]; t <= n; ++t) {
      v.values[v.layout.y(u, t)] = 1.0;
    }
  }
  return v;
}

BaseProgram BuildBase(const Instance& instance) {
  return internal::BuildTimeIndexedProgram(instance.num_documents(),
                                           std::vector<int>(instance.num_users(), 1));
}

std::vector<std::pair<int, double>> KnapsackRow::DocCoefficients() const {
  std::vector<std::pair<int, double>> coeffs;
  for (int s : t1) coeffs.push_back({s, static_cast<double>(residual)});
  std::vector<std::pair<int, double>> spread;
  for (const auto& docs : topic_docs) {
    for (int s : docs) spread.push_back({s, 1.0});
  }
  std::sort(spread.begin(), spread.end());
  for (const auto& [s, c] : spread) {
    if (!coeffs.empty() && coeffs.back().first == s) {
      coeffs.back().second += c;
    } else {
      coeffs.push_back({s, c});
    }
  }
  std::sort(coeffs.begin(), coeffs.end());
  return coeffs;
}

double KnapsackRow::Violation(const RelaxationVariables& v) const {
  double rhs = 0.0;
  for (const auto& [s, c] : DocCoefficients()) rhs += c * v.z(s, time);
  return residual * v.g(user, group, time) - rhs;
}

lp::Row KnapsackRow::ToRow(const RelaxationLayout& layout) const {
  lp::Row row;
  row.comparator = lp::Comparator::kLessEqual;
  row.rhs = 0.0;
  row.terms.push_back({layout.g(user, group, time), static_cast<double>(residual)});
  for (const auto& [s, c] : DocCoefficients()) row.terms.push_back({layout.z(s, time), -c});
  row.name = "kc_" + std::to_string(user + 1) + "_" + std::to_string(group + 1) + "_" +
             std::to_string(time) + "_f" + std::to_string(fixed.size());
  return row;
}

KnapsackRow MakeGroupKnapsackRow(const Corpus& corpus,
                                 std::span<const int> interests, int threshold,
                                 int user, int group, int time,
                                 std::span<const int> fixed) {
  if (time < 1 || time > corpus.num_documents()) {
    throw Error(ErrorCode::kInvalidArgument, "time out of range");
  }
  std::vector<int> sorted_interests(interests.begin(), interests.end());
  std::sort(sorted_interests.begin(), sorted_interests.end());
  KnapsackRow row;
  row.user = user;
  row.group = group;
  row.time = time;
  row.fixed.assign(fixed.begin(), fixed.end());
  std::sort(row.fixed.begin(), row.fixed.end());
  if (std::adjacent_find(row.fixed.begin(), row.fixed.end()) != row.fixed.end()) {
    throw Error(ErrorCode::kInvalidArgument, "F has repeated topics");
  }
  if (!std::includes(sorted_interests.begin(), sorted_interests.end(),
                     row.fixed.begin(), row.fixed.end())) {
    throw Error(ErrorCode::kInvalidArgument, "F must be a subset of the interests");
  }
  row.residual = threshold - static_cast<int>(row.fixed.size());
  if (row.residual <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "|F| >= K gives a vacuous row");
  }
  std::set_difference(sorted_interests.begin(), sorted_interests.end(),
                      row.fixed.begin(), row.fixed.end(),
                      std::back_inserter(row.open_topics));
  std::vector<int> open_count(corpus.num_documents(), 0);
  for (int e : row.open_topics) {
    for (int s : corpus.documents_with(e)) ++open_count[s];
  }
  std::vector<char> in_t1(corpus.num_documents(), 0);
  for (int s = 0; s < corpus.num_documents(); ++s) {
    if (open_count[s] >= row.residual) {
      row.t1.push_back(s);
      in_t1[s] = 1;
    } else {
      row.t2.push_back(s);
    }
  }
  for (int e : row.open_topics) {
    std::vector<int> docs;
    for (int s : corpus.documents_with(e)) {
      if (!in_t1[s]) docs.push_back(s);
    }
    row.topic_docs.push_back(std::move(docs));
  }
  return row;
}

KnapsackRow MakeKnapsackRow(const Instance& instance, int user, int time,
                            std::span<const int> fixed) {
  if (user < 0 || user >= instance.num_users()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown user index");
  }
  const User& u = instance.user(user);
  return MakeGroupKnapsackRow(instance.corpus(), u.interests, u.threshold, user, 0,
                              time, fixed);
}

std::vector<int> SeparationTimes(int num_documents) {
  std::vector<int> times;
  for (int t = 1;; t *= 2) {
    times.push_back(std::min(t, num_documents));
    if (t >= num_documents) break;
  }
  times.push_back(num_documents);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

std::vector<KnapsackRow> Separate(const Instance& instance,
                                  const RelaxationVariables& solution,
                                  std::span<const int> times,
                                  const RelaxationConfig& config) {
  std::vector<std::pair<double, KnapsackRow>> scored;
  for (int u = 0; u < instance.num_users(); ++u) {
    const User& user = instance.user(u);
    for (KnapsackRow& row :
         internal::SeparateRequirement(instance.corpus(), user.interests,
                                       user.threshold, u, 0, solution, times, config)) {
      const double violation = row.Violation(solution);
      if (violation > config.separation_tolerance) {
        scored.push_back({violation, std::move(row)});
      }
    }
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<KnapsackRow> rows;
  for (auto& [v, row] : scored) rows.push_back(std::move(row));
  return rows;
}

FractionalSolution SolveRelaxation(const Instance& instance,
                                   const RelaxationConfig& config) {
  const BaseProgram base = BuildBase(instance);
  const std::vector<int> times = SeparationTimes(instance.num_documents());
  auto separator = [&](const RelaxationVariables& current) {
    std::vector<internal::Cut> cuts;
    for (const KnapsackRow& row : Separate(instance, current, times, config)) {
      cuts.push_back(internal::ToCut(row, base.layout, current));
    }
    return cuts;
  };
  return internal::RunRowGeneration(base, separator, config);
}

int HalfTime(std::span<const double> curve) {
  for (int t = static_cast<int>(curve.size()); t >= 1; --t) {
    if (curve[t - 1] <= 0.5 + 1e-9) return t;
  }
  return 0;
}

int HalfTime(const FractionalSolution& solution, int user) {
  return HalfTime(solution.variables.UserCurve(user));
}

double FractionalSolution::HalfBound() const {
  double total = 0.0;
  for (int t : half_times) total += t;
  return 0.5 * total;
}

std::string_view ToString(SeparationFamily family) {
  switch (family) {
    case SeparationFamily::kNearlyCovered: return "nearly-covered";
    case SeparationFamily::kCoveragePrefix: return "coverage-prefix";
    case SeparationFamily::kExplicit: return "explicit";
  }
  return "unknown";
}

void WriteRowTable(const FractionalSolution& solution, std::ostream& out) {
  out << "iter\tuser\tgroup\tt\t|F|\tF\tviolation\tfamily\n";
  for (const GeneratedRow& row : solution.rows) {
    out << row.iteration << '\t' << row.user + 1 << '\t' << row.group + 1 << '\t'
        << row.time << '\t' << row.fixed.size() << '\t' << '{';
    for (std::size_t i = 0; i < row.fixed.size(); ++i) {
      out << (i ? "," : "") << row.fixed[i] + 1;
    }
    out << "}\t" << row.violation << '\t' << ToString(row.family) << '\n';
  }
}

}  // namespace rdc
