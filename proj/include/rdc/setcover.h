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

#ifndef RDC_SETCOVER_H_
#define RDC_SETCOVER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdc/core_model.h"

namespace rdc::setcover {

// SC(F): cover the target topics with the given sets.
struct CoverInstance {
  int num_topics = 0;
  std::vector<std::vector<int>> sets;  // sorted topic indices per set
  std::vector<int> target;             // F, sorted

  static CoverInstance FromCorpus(const Corpus& corpus, std::span<const int> target);
  int num_sets() const { return static_cast<int>(sets.size()); }
};

enum class Strategy {
  kGreedy,
  kPrimalDual,
  kExact,
  kDisjoint,
  kAuto,
  kVcDimension,  // extension slot, not implemented
  kGeometric,    // extension slot, not implemented
};

std::string_view ToString(Strategy strategy);
// Throws kInvalidArgument for unknown names.
Strategy ParseStrategy(std::string_view name);

struct CoverResult {
  std::vector<int> chosen;      // H, sorted set indices
  double lp_value = 0.0;        // optimum of LP(SC(F))
  double certified_rho = 1.0;   // |H| <= certified_rho * lp_value
  Strategy strategy = Strategy::kAuto;
};

inline constexpr double kCertificateTolerance = 1e-7;
inline constexpr int kDefaultExactCap = 20;

// min Σ x_s s.t. Σ_{s∋e} x_s >= 1 for e ∈ F, x >= 0.
// Throws kInfeasible when some target topic is in no set.
double CoverLpValue(const CoverInstance& instance);

// Largest-gain greedy, ties to the lowest index; rho = H(max_s |C_s ∩ F|).
CoverResult GreedyCover(const CoverInstance& instance);

// Threshold rounding of the cover LP at 1/d, d the maximum topic frequency.
CoverResult PrimalDualCover(const CoverInstance& instance);

// Optimal integral cover by branch and bound. Throws kCapExceeded when the
// instance has more than `size_cap` sets.
CoverResult ExactCover(const CoverInstance& instance, int size_cap = kDefaultExactCap);

// Every target topic lies in exactly one set: H is every set meeting F and
// rho = 1. Throws kInvalidArgument when the restriction is not disjoint.
CoverResult DisjointCover(const CoverInstance& instance);
bool IsDisjointOnTarget(const CoverInstance& instance);

CoverResult AutoCover(const CoverInstance& instance, Strategy strategy = Strategy::kAuto);

// Throws kInvariant when `result` does not cover F or breaks its certificate.
void CheckCover(const CoverInstance& instance, const CoverResult& result);

// H(k) = 1 + 1/2 + ... + 1/k.
double Harmonic(int k);

}  // namespace rdc::setcover

#endif  // RDC_SETCOVER_H_
