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

#ifndef RDC_LP_ENGINE_H_
#define RDC_LP_ENGINE_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rdc::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Comparator { kLessEqual, kEqual, kGreaterEqual };

struct Term {
  int var;
  double coeff;
};

struct Row {
  std::vector<Term> terms;
  Comparator comparator = Comparator::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

struct Variable {
  double lower = 0.0;
  double upper = kInfinity;
  double cost = 0.0;
  std::string name;
};

// A minimization program. Every variable needs at least one finite bound.
class LinearProgram {
 public:
  int AddVariable(double lower, double upper, double cost, std::string name = {});
  // Throws kInvalidArgument when a term references an undeclared variable.
  int AddRow(Row row);
  void AddObjectiveOffset(double offset) { offset_ += offset; }

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  double objective_offset() const { return offset_; }

  double Objective(std::span<const double> values) const;
  double Activity(const Row& row, std::span<const double> values) const;
  // Amount by which `row` is violated at `values` (0 when satisfied).
  double Violation(const Row& row, std::span<const double> values) const;
  // Largest row or bound violation.
  double MaxViolation(std::span<const double> values) const;

 private:
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
  double offset_ = 0.0;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view ToString(SolveStatus status);

struct SolveOptions {
  double tolerance = 1e-7;  // absolute feasibility tolerance
  std::int64_t iteration_cap = 1'000'000;
};

struct LpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> values;
  double objective = 0.0;
  std::int64_t iterations = 0;
};

// Bounded-variable primal simplex on a dense tableau. Pricing is Dantzig's
// rule with a switch to Bland's rule after a run of degenerate pivots. Rows
// added after a solve are absorbed with dual simplex pivots from the
// previous optimal basis.
class SimplexSolver {
 public:
  explicit SimplexSolver(LinearProgram program, SolveOptions options = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  LpSolution Solve();
  // Appends rows and reoptimizes; equivalent in outcome to solving the
  // augmented program from scratch.
  LpSolution AddRowsAndResolve(std::span<const Row> rows);

  const LinearProgram& program() const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

LpSolution Solve(const LinearProgram& program, const SolveOptions& options = {});

// Solves `program` augmented with `new_rows`. When `previous` is optimal for
// `program` and already satisfies every new row it is returned unchanged.
LpSolution ResolveWithRows(const LinearProgram& program,
                           const LpSolution& previous,
                           std::span<const Row> new_rows,
                           const SolveOptions& options = {});

// CPLEX-style LP text: objective, constraints, bounds.
void WriteLpText(const LinearProgram& program, std::ostream& out);

}  // namespace rdc::lp

#endif  // RDC_LP_ENGINE_H_
