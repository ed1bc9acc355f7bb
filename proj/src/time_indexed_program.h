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

// Shared machinery for the time-indexed relaxations (plain, grouped and XOS
// users): program construction and the separate-resolve loop.

#ifndef RDC_SRC_TIME_INDEXED_PROGRAM_H_
#define RDC_SRC_TIME_INDEXED_PROGRAM_H_

#include <functional>
#include <span>
#include <vector>

#include "rdc/core_model.h"
#include "rdc/lp_engine.h"
#include "rdc/relaxation.h"

namespace rdc::internal {

struct Cut {
  int user = 0;
  int group = 0;
  int time = 1;
  std::vector<int> fixed;
  double violation = 0.0;
  SeparationFamily family = SeparationFamily::kExplicit;
  lp::Row row;
};

using Separator = std::function<std::vector<Cut>(const RelaxationVariables&)>;

BaseProgram BuildTimeIndexedProgram(int num_documents,
                                    std::vector<int> groups_per_user);

// Solve, separate, add rows, resolve until the separator finds nothing new.
// Throws kIterationLimit, kRowGenerationCap, or kInvariant.
FractionalSolution RunRowGeneration(const BaseProgram& base,
                                    const Separator& separator,
                                    const RelaxationConfig& config);

// Knapsack-cover separation for one requirement (interests, threshold) of a
// user at the given times. Rows are returned unsorted and unfiltered by
// tolerance.
std::vector<KnapsackRow> SeparateRequirement(const Corpus& corpus,
                                             std::span<const int> interests,
                                             int threshold, int user, int group,
                                             const RelaxationVariables& solution,
                                             std::span<const int> times,
                                             const RelaxationConfig& config);

Cut ToCut(const KnapsackRow& row, const RelaxationLayout& layout,
          const RelaxationVariables& solution);

// Sorts by violation (descending) and drops rows at or below the tolerance.
void RankCuts(std::vector<Cut>& cuts, double tolerance);

}  // namespace rdc::internal

#endif  // RDC_SRC_TIME_INDEXED_PROGRAM_H_
