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

#ifndef RDC_EXTENSIONS_H_
#define RDC_EXTENSIONS_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rdc/core_model.h"
#include "rdc/relaxation.h"
#include "rdc/rounding.h"

namespace rdc {

inline constexpr int kDefaultGroupCap = 16;

// ---- Groups of intents ----------------------------------------------------

struct RequirementGroup {
  std::vector<int> interests;  // sorted topic indices
  int threshold = 1;

  bool operator==(const RequirementGroup&) const = default;
};

struct GroupUser {
  std::string id;
  std::vector<RequirementGroup> groups;

  bool operator==(const GroupUser&) const = default;
};

// A user is satisfied as soon as any one of their groups is.
class GroupInstance {
 public:
  GroupInstance() = default;
  // Throws kInvalidArgument for out-of-range topic indices.
  GroupInstance(Corpus corpus, std::vector<GroupUser> users);

  static GroupInstance FromIndices(
      int num_topics, std::vector<std::vector<int>> doc_topics,
      std::vector<std::vector<std::pair<std::vector<int>, int>>> users);
  // One group per user.
  static GroupInstance Lift(const Instance& instance);

  const Corpus& corpus() const { return corpus_; }
  int num_documents() const { return corpus_.num_documents(); }
  int num_topics() const { return corpus_.num_topics(); }
  int num_users() const { return static_cast<int>(users_.size()); }
  const GroupUser& user(int u) const { return users_[u]; }
  const std::vector<GroupUser>& users() const { return users_; }
  std::optional<int> FindUser(std::string_view id) const;

  bool operator==(const GroupInstance& other) const {
    return corpus_ == other.corpus_ && users_ == other.users_;
  }

 private:
  Corpus corpus_;
  std::vector<GroupUser> users_;
};

std::vector<Violation> Validate(const GroupInstance& instance,
                                int group_cap = kDefaultGroupCap);

// t_u is the earliest time any group reaches its threshold.
Ranking EvaluateRgc(const GroupInstance& instance, std::span<const int> order);

RelaxationVariables IntegralAssignment(const GroupInstance& instance,
                                       std::span<const int> order);

std::vector<KnapsackRow> SeparateRgc(const GroupInstance& instance,
                                     const RelaxationVariables& solution,
                                     std::span<const int> times,
                                     const RelaxationConfig& config = {});

// ---- Max-of-additive valuations -------------------------------------------

inline constexpr double kXosTolerance = 1e-9;

struct XosFunction {
  std::vector<double> weights;  // A_uis, one per document

  bool operator==(const XosFunction&) const = default;
};

struct XosUser {
  std::string id;
  std::vector<XosFunction> functions;

  bool operator==(const XosUser&) const = default;
};

class XosInstance {
 public:
  XosInstance() = default;
  // Throws kInvalidArgument when a weight vector does not have one entry
  // per document.
  XosInstance(Corpus corpus, std::vector<XosUser> users);

  static XosInstance FromWeights(int num_documents,
                                 std::vector<std::vector<std::vector<double>>> users);

  const Corpus& corpus() const { return corpus_; }
  int num_documents() const { return corpus_.num_documents(); }
  int num_users() const { return static_cast<int>(users_.size()); }
  const XosUser& user(int u) const { return users_[u]; }
  const std::vector<XosUser>& users() const { return users_; }
  double weight(int u, int i, int s) const { return users_[u].functions[i].weights[s]; }
  std::optional<int> FindUser(std::string_view id) const;

  bool operator==(const XosInstance& other) const {
    return corpus_ == other.corpus_ && users_ == other.users_;
  }

 private:
  Corpus corpus_;
  std::vector<XosUser> users_;
};

// Reports negative or non-finite weights, users without functions, users no
// function can satisfy, and more than `function_cap` functions.
std::vector<Violation> Validate(const XosInstance& instance,
                                int function_cap = kDefaultGroupCap);

// t_u = min{t : max_i Σ_{first t} A_uis >= 1}, comparisons with
// kXosTolerance. Throws kInvalidInstance for an unsatisfiable user.
Ranking EvaluateRxos(const XosInstance& instance, std::span<const int> order);

RelaxationVariables IntegralAssignment(const XosInstance& instance,
                                       std::span<const int> order);

// (1 - A(F)) g_uit <= (1 - A(F)) Σ_{T1} z_st + Σ_{T2} A_uis z_st with
// T1 = {s : A_uis >= 1 - A(F)} over all documents.
struct XosKnapsackRow {
  int user = 0;
  int function = 0;
  int time = 1;
  std::vector<int> fixed;  // F, documents
  double slack = 1.0;      // 1 - A(F)
  std::vector<int> t1;
  std::vector<std::pair<int, double>> coefficients;  // document, coefficient of z
  SeparationFamily family = SeparationFamily::kExplicit;

  double Violation(const RelaxationVariables& v) const;
  lp::Row ToRow(const RelaxationLayout& layout) const;
};

// Throws kInvalidArgument unless F is duplicate-free, A(F) < 1 and
// 1 <= time <= n.
XosKnapsackRow MakeXosKnapsackRow(const XosInstance& instance, int user, int function,
                                  int time, std::span<const int> fixed);

// Candidate F per (user, function, t): documents with scale * z >= 1 by
// decreasing z while affordable, and prefixes of documents ordered by
// A (1 - z) descending. Returns violated rows, most violated first.
std::vector<XosKnapsackRow> SeparateRxos(const XosInstance& instance,
                                         const RelaxationVariables& solution,
                                         std::span<const int> times,
                                         const RelaxationConfig& config = {});

// ---- Solving --------------------------------------------------------------

struct ExtensionConfig {
  RelaxationConfig relaxation;
  RoundingConfig rounding;
  int group_cap = kDefaultGroupCap;
};

struct ExtensionResult {
  FractionalSolution fractional;  // lower_bound bounds the optimum
  BestOfResult rounding;          // rounding.best.ranking is the answer
};

// Validation failures throw kInvalidInstance.
FractionalSolution SolveRgcRelaxation(const GroupInstance& instance,
                                      const ExtensionConfig& config = {});
ExtensionResult SolveRgc(const GroupInstance& instance, const ExtensionConfig& config = {});

FractionalSolution SolveRxosRelaxation(const XosInstance& instance,
                                       const ExtensionConfig& config = {});
// Rounding without the set-cover step; overflow at overflow_base * 2^k.
ExtensionResult SolveRxos(const XosInstance& instance, const ExtensionConfig& config = {});

}  // namespace rdc

#endif  // RDC_EXTENSIONS_H_
