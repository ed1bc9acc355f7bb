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

#ifndef RDC_RELAXATION_H_
#define RDC_RELAXATION_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rdc/core_model.h"
#include "rdc/lp_engine.h"

namespace rdc {

struct RelaxationConfig {
  // A topic e is nearly covered at time t when scale * Σ_{s∋e} z_st >= 1.
  double scale = 50.0;
  // Rows violated by less than this are not generated.
  double separation_tolerance = 1e-6;
  int max_rounds = 100;
  // Also separate rows whose F is a prefix of the best-covered interests.
  bool prefix_family = true;
  lp::SolveOptions lp;
};

// Variable indices of the time-indexed program. Times are 1-based. Users
// with a single requirement group share y for their group indicator.
class RelaxationLayout {
 public:
  RelaxationLayout() = default;
  RelaxationLayout(int num_documents, std::vector<int> groups_per_user);

  int num_documents() const { return n_; }
  int num_users() const { return static_cast<int>(groups_.size()); }
  int num_groups(int u) const { return groups_[u]; }
  int num_variables() const { return num_vars_; }

  int x(int s, int t) const { return s * n_ + (t - 1); }
  int z(int s, int t) const { return n_ * n_ + s * n_ + (t - 1); }
  int y(int u, int t) const { return 2 * n_ * n_ + u * n_ + (t - 1); }
  int g(int u, int i, int t) const {
    return groups_[u] == 1 ? y(u, t) : group_base_[u] + i * n_ + (t - 1);
  }

 private:
  int n_ = 0;
  std::vector<int> groups_;
  std::vector<int> group_base_;
  int num_vars_ = 0;
};

// Values of x, z, y (and group indicators) for every document, user and time.
struct RelaxationVariables {
  RelaxationLayout layout;
  std::vector<double> values;  // indexed by RelaxationLayout

  double x(int s, int t) const { return values[layout.x(s, t)]; }
  double z(int s, int t) const { return values[layout.z(s, t)]; }
  double y(int u, int t) const { return values[layout.y(u, t)]; }
  double g(int u, int i, int t) const { return values[layout.g(u, i, t)]; }
  std::vector<double> UserCurve(int u) const;
};

// The integral (x, y, z) of a permutation: x_st = [order[t] = s],
// z_st = [s among the first t], y_ut = [u satisfied by time t].
RelaxationVariables IntegralAssignment(const Instance& instance,
                                       std::span<const int> order);

struct BaseProgram {
  lp::LinearProgram program;
  RelaxationLayout layout;
};

// Objective Σ_u Σ_t (1 - y_ut), assignment rows, prefix rows z_st = z_s,t-1 +
// x_st, monotone y, box bounds. No knapsack-cover rows.
BaseProgram BuildBase(const Instance& instance);

enum class SeparationFamily { kNearlyCovered, kCoveragePrefix, kExplicit };

// One knapsack-cover row for (user, time, F):
//   residual * y_ut <= residual * Σ_{T1} z_st + Σ_{e ∈ I\F} Σ_{S(e)} z_st
// with residual = K - |F|, T1 the documents covering at least `residual`
// topics of I\F, and S(e) the documents of T2 containing e.
struct KnapsackRow {
  int user = 0;
  int group = 0;
  int time = 1;
  std::vector<int> fixed;         // F
  int residual = 0;               // K - |F|
  std::vector<int> t1;
  std::vector<int> t2;
  std::vector<int> open_topics;   // I \ F
  std::vector<std::vector<int>> topic_docs;  // S(e, u, F), aligned with open_topics
  SeparationFamily family = SeparationFamily::kExplicit;

  // (document, coefficient of z_{s,time}) for the right-hand side.
  std::vector<std::pair<int, double>> DocCoefficients() const;
  // residual * indicator - RHS; positive means violated.
  double Violation(const RelaxationVariables& v) const;
  lp::Row ToRow(const RelaxationLayout& layout) const;
};

// Throws kInvalidArgument unless F ⊆ I_u and |F| < K_u.
KnapsackRow MakeKnapsackRow(const Instance& instance, int user, int time,
                            std::span<const int> fixed);
// Same for one requirement group (interests, threshold) of a user.
KnapsackRow MakeGroupKnapsackRow(const Corpus& corpus,
                                 std::span<const int> interests, int threshold,
                                 int user, int group, int time,
                                 std::span<const int> fixed);

// Powers of two clamped to n, plus n itself, ascending and unique.
std::vector<int> SeparationTimes(int num_documents);

// Violated rows at the given times, most violated first.
std::vector<KnapsackRow> Separate(const Instance& instance,
                                  const RelaxationVariables& solution,
                                  std::span<const int> times,
                                  const RelaxationConfig& config = {});

struct GeneratedRow {
  int user = 0;
  int group = 0;
  int time = 1;
  std::vector<int> fixed;
  double violation = 0.0;
  SeparationFamily family = SeparationFamily::kExplicit;
  int iteration = 0;
};

struct FractionalSolution {
  RelaxationVariables variables;
  // Σ_u Σ_t (1 - y*_ut).
  double lp_objective = 0.0;
  // lp_objective + |U|: a lower bound on the optimal total satisfying time.
  double lower_bound = 0.0;
  std::vector<int> half_times;  // t_u*
  std::vector<GeneratedRow> rows;
  int iterations = 0;
  std::int64_t pivots = 0;

  double HalfBound() const;  // (1/2) Σ_u t_u*
};

FractionalSolution SolveRelaxation(const Instance& instance,
                                   const RelaxationConfig& config = {});

// Largest t with y_t <= 1/2, or 0 when y_1 > 1/2. `curve[t-1]` is y_t.
int HalfTime(std::span<const double> curve);
int HalfTime(const FractionalSolution& solution, int user);

std::string_view ToString(SeparationFamily family);

// One line per generated row: iteration, user, group, t, |F|, F, violation,
// family.
void WriteRowTable(const FractionalSolution& solution, std::ostream& out);

}  // namespace rdc

#endif  // RDC_RELAXATION_H_
