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

#include "time_indexed_program.h"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "rdc/error.h"

namespace rdc::internal {
namespace {

std::string Name(char prefix, int a, int t) {
  return std::string(1, prefix) + "_" + std::to_string(a + 1) + "_" + std::to_string(t);
}

}  // namespace

BaseProgram BuildTimeIndexedProgram(int num_documents,
                                    std::vector<int> groups_per_user) {
  const int n = num_documents;
  const int num_users = static_cast<int>(groups_per_user.size());
  BaseProgram base{lp::LinearProgram(), RelaxationLayout(n, groups_per_user)};
  const RelaxationLayout& layout = base.layout;
  lp::LinearProgram& lp = base.program;

  for (int s = 0; s < n; ++s) {
    for (int t = 1; t <= n; ++t) lp.AddVariable(0.0, 1.0, 0.0, Name('x', s, t));
  }
  for (int s = 0; s < n; ++s) {
    for (int t = 1; t <= n; ++t) lp.AddVariable(0.0, 1.0, 0.0, Name('z', s, t));
  }
  for (int u = 0; u < num_users; ++u) {
    for (int t = 1; t <= n; ++t) lp.AddVariable(0.0, 1.0, -1.0, Name('y', u, t));
  }
  for (int u = 0; u < num_users; ++u) {
    if (groups_per_user[u] == 1) continue;
    for (int i = 0; i < groups_per_user[u]; ++i) {
      for (int t = 1; t <= n; ++t) {
        lp.AddVariable(0.0, 1.0, 0.0,
                       "g_" + std::to_string(u + 1) + "_" + std::to_string(i + 1) +
                           "_" + std::to_string(t));
      }
    }
  }
  CheckInvariant(lp.num_variables() == layout.num_variables(),
                 "layout and program disagree on the variable count");
  lp.AddObjectiveOffset(static_cast<double>(num_users) * n);

  for (int s = 0; s < n; ++s) {
    lp::Row row{{}, lp::Comparator::kEqual, 1.0, "doc_" + std::to_string(s + 1)};
    for (int t = 1; t <= n; ++t) row.terms.push_back({layout.x(s, t), 1.0});
    lp.AddRow(std::move(row));
  }
  for (int t = 1; t <= n; ++t) {
    lp::Row row{{}, lp::Comparator::kEqual, 1.0, "time_" + std::to_string(t)};
    for (int s = 0; s < n; ++s) row.terms.push_back({layout.x(s, t), 1.0});
    lp.AddRow(std::move(row));
  }
  for (int s = 0; s < n; ++s) {
    for (int t = 1; t <= n; ++t) {
      lp::Row row{{{layout.z(s, t), 1.0}, {layout.x(s, t), -1.0}},
                  lp::Comparator::kEqual, 0.0, "prefix_" + Name('z', s, t).substr(2)};
      if (t > 1) row.terms.push_back({layout.z(s, t - 1), -1.0});
      lp.AddRow(std::move(row));
    }
  }
  for (int u = 0; u < num_users; ++u) {
    for (int t = 1; t < n; ++t) {
      lp.AddRow({{{layout.y(u, t), 1.0}, {layout.y(u, t + 1), -1.0}},
                 lp::Comparator::kLessEqual, 0.0, "mono_" + Name('y', u, t).substr(2)});
    }
    if (groups_per_user[u] == 1) continue;
    for (int i = 0; i < groups_per_user[u]; ++i) {
      for (int t = 1; t < n; ++t) {
        lp.AddRow({{{layout.g(u, i, t), 1.0}, {layout.g(u, i, t + 1), -1.0}},
                   lp::Comparator::kLessEqual, 0.0,
                   "gmono_" + std::to_string(u + 1) + "_" + std::to_string(i + 1) +
                       "_" + std::to_string(t)});
      }
    }
    for (int t = 1; t <= n; ++t) {
      lp::Row row{{{layout.y(u, t), 1.0}}, lp::Comparator::kLessEqual, 0.0,
                  "link_" + Name('y', u, t).substr(2)};
      for (int i = 0; i < groups_per_user[u]; ++i) {
        row.terms.push_back({layout.g(u, i, t), -1.0});
      }
      lp.AddRow(std::move(row));
    }
  }
  return base;
}

FractionalSolution RunRowGeneration(const BaseProgram& base,
                                    const Separator& separator,
                                    const RelaxationConfig& config) {
  const RelaxationLayout& layout = base.layout;
  lp::SimplexSolver solver(base.program, config.lp);
  lp::LpSolution lp_solution = solver.Solve();
  FractionalSolution result;
  std::set<std::tuple<int, int, int, std::vector<int>>> generated;

  auto check_status = [](const lp::LpSolution& s) {
    if (s.status == lp::SolveStatus::kIterationLimit) {
      throw Error(ErrorCode::kIterationLimit, "simplex iteration cap reached");
    }
    CheckInvariant(s.status == lp::SolveStatus::kOptimal,
                   std::string("relaxation solve ended ") +
                       std::string(lp::ToString(s.status)));
  };
  check_status(lp_solution);
  result.pivots += lp_solution.iterations;

  for (int iteration = 1;; ++iteration) {
    RelaxationVariables current{layout, lp_solution.values};
    std::vector<Cut> cuts = separator(current);
    std::vector<lp::Row> rows;
    for (Cut& cut : cuts) {
      if (cut.violation <= config.separation_tolerance) continue;
      auto key = std::make_tuple(cut.user, cut.group, cut.time, cut.fixed);
      if (!generated.insert(key).second) continue;
      result.rows.push_back({cut.user, cut.group, cut.time, cut.fixed,
                             cut.violation, cut.family, iteration});
      rows.push_back(std::move(cut.row));
    }
    if (rows.empty()) {
      result.iterations = iteration - 1;
      break;
    }
    if (iteration > config.max_rounds) {
      throw Error(ErrorCode::kRowGenerationCap,
                  "row generation did not converge within " +
                      std::to_string(config.max_rounds) + " rounds");
    }
    lp_solution = solver.AddRowsAndResolve(rows);
    check_status(lp_solution);
    result.pivots += lp_solution.iterations;
  }

  result.variables = RelaxationVariables{layout, lp_solution.values};
  result.lp_objective = lp_solution.objective;
  result.lower_bound = result.lp_objective + layout.num_users();
  for (int u = 0; u < layout.num_users(); ++u) {
    result.half_times.push_back(HalfTime(result.variables.UserCurve(u)));
  }
  CheckInvariant(result.HalfBound() <= result.lp_objective + 1e-6,
                 "half-time bound exceeds the LP objective");
  return result;
}

std::vector<KnapsackRow> SeparateRequirement(const Corpus& corpus,
                                             std::span<const int> interests,
                                             int threshold, int user, int group,
                                             const RelaxationVariables& solution,
                                             std::span<const int> times,
                                             const RelaxationConfig& config) {
  std::vector<KnapsackRow> rows;
  std::vector<std::vector<int>> seen;
  auto consider = [&](std::vector<int> fixed, int t, SeparationFamily family) {
    std::sort(fixed.begin(), fixed.end());
    if (static_cast<int>(fixed.size()) >= threshold) return;
    if (std::find(seen.begin(), seen.end(), fixed) != seen.end()) return;
    seen.push_back(fixed);
    KnapsackRow row =
        MakeGroupKnapsackRow(corpus, interests, threshold, user, group, t, fixed);
    row.family = family;
    rows.push_back(std::move(row));
  };
  for (int t : times) {
    seen.clear();
    std::vector<std::pair<double, int>> mass;
    for (int e : interests) {
      double total = 0.0;
      for (int s : corpus.documents_with(e)) total += solution.z(s, t);
      mass.push_back({total, e});
    }
    std::vector<int> nearly;
    for (auto [m, e] : mass) {
      if (config.scale * m >= 1.0 - 1e-9) nearly.push_back(e);
    }
    consider(nearly, t, SeparationFamily::kNearlyCovered);
    if (!config.prefix_family) continue;
    std::stable_sort(mass.begin(), mass.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<int> prefix;
    for (int j = 0; j < threshold; ++j) {
      consider(prefix, t, SeparationFamily::kCoveragePrefix);
      if (j < static_cast<int>(mass.size())) prefix.push_back(mass[j].second);
    }
  }
  return rows;
}

Cut ToCut(const KnapsackRow& row, const RelaxationLayout& layout,
          const RelaxationVariables& solution) {
  return Cut{row.user,   row.group,  row.time,         row.fixed,
             row.Violation(solution), row.family, row.ToRow(layout)};
}

void RankCuts(std::vector<Cut>& cuts, double tolerance) {
  std::erase_if(cuts, [&](const Cut& c) { return c.violation <= tolerance; });
  std::stable_sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) {
    return a.violation > b.violation;
  });
}

}  // namespace rdc::internal
