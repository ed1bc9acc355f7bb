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

#ifndef RDC_BASELINES_H_
#define RDC_BASELINES_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "rdc/core_model.h"

namespace rdc {

inline constexpr int kDefaultOracleCap = 9;

struct OracleResult {
  Ranking ranking;          // lexicographically smallest optimal permutation
  std::int64_t nodes = 0;   // search nodes visited
};

// Exact optimum by depth-first branch and bound over prefixes. Throws
// kCapExceeded when the instance has more than `doc_cap` documents.
OracleResult BruteForce(const Instance& instance, int doc_cap = kDefaultOracleCap);

// Plain enumeration of all permutations for any cost function; the first
// optimal permutation in lexicographic order wins. Throws kCapExceeded above
// `doc_cap` documents.
struct EnumerationResult {
  std::vector<int> order;
  std::int64_t cost = 0;
  std::int64_t permutations = 0;
};
EnumerationResult EnumerateOptimum(
    int num_documents, const std::function<std::int64_t(std::span<const int>)>& cost,
    int doc_cap = 8);

// Documents by the number of users they are relevant to, descending; ties by
// index.
Ranking PrpRanking(const Instance& instance);

enum class GreedyVariant {
  kSatisfy,   // most newly satisfied users, then most new topics, then index
  kCoverage,  // largest Σ_u min(K_u, covered) gain, then index
};
std::string_view ToString(GreedyVariant variant);
// Throws kInvalidArgument for unknown names.
GreedyVariant ParseGreedyVariant(std::string_view name);

Ranking GreedyRanking(const Instance& instance, GreedyVariant variant);

}  // namespace rdc

#endif  // RDC_BASELINES_H_
