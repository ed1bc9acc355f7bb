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

#include "rdc/lp_engine.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <utility>

#include "rdc/error.h"

namespace rdc::lp {

int LinearProgram::AddVariable(double lower, double upper, double cost,
                               std::string name) {
  if (!(lower <= upper)) {
    throw Error(ErrorCode::kInvalidArgument, "variable bounds need lower <= upper");
  }
  if (std::isinf(lower) && std::isinf(upper)) {
    throw Error(ErrorCode::kInvalidArgument, "free variables are not supported");
  }
  if (name.empty()) name = "v" + std::to_string(vars_.size());
  vars_.push_back({lower, upper, cost, std::move(name)});
  return num_variables() - 1;
}

int LinearProgram::AddRow(Row row) {
  for (const Term& t : row.terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row references undeclared variable " + std::to_string(t.var));
    }
  }
  if (row.name.empty()) row.name = "r" + std::to_string(rows_.size());
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

double LinearProgram::Objective(std::span<const double> values) const {
  double total = offset_;
  for (int j = 0; j < num_variables(); ++j) total += vars_[j].cost * values[j];
  return total;
}

double LinearProgram::Activity(const Row& row, std::span<const double> values) const {
  double total = 0.0;
  for (const Term& t : row.terms) total += t.coeff * values[t.var];
  return total;
}

double LinearProgram::Violation(const Row& row, std::span<const double> values) const {
  const double activity = Activity(row, values);
  switch (row.comparator) {
    case Comparator::kLessEqual: return std::max(0.0, activity - row.rhs);
    case Comparator::kGreaterEqual: return std::max(0.0, row.rhs - activity);
    case Comparator::kEqual: return std::abs(activity - row.rhs);
  }
  return 0.0;
}

double LinearProgram::MaxViolation(std::span<const double> values) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max(worst, vars_[j].lower - values[j]);
    worst = std::max(worst, values[j] - vars_[j].upper);
  }
  for (const Row& row : rows_) worst = std::max(worst, Violation(row, values));
  return worst;
}

std::string_view ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kOptimalityTol = 1e-9;
constexpr double kPrimalTol = 1e-9;
constexpr int kDegenerateRunBeforeBland = 50;

}  // namespace

class SimplexSolver::Impl {
 public:
  Impl(LinearProgram program, SolveOptions options)
      : program_(std::move(program)), options_(options) {}

  LpSolution Solve() {
    iterations_ = 0;
    Build();
    status_ = RunPhases();
    return Finish();
  }

  LpSolution AddRowsAndResolve(std::span<const Row> rows) {
    for (const Row& row : rows) program_.AddRow(row);
    if (status_ != SolveStatus::kOptimal || m_ == 0) return Solve();
    iterations_ = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      AppendRow(program_.num_rows() - static_cast<int>(rows.size()) +
                static_cast<int>(i));
    }
    status_ = DualLoop();
    if (status_ == SolveStatus::kOptimal) {
      SetPhaseCosts(/*phase_one=*/false);
      status_ = PrimalLoop();
    }
    if (status_ == SolveStatus::kInfeasible) {
      // Confirm from a fresh basis; a dual ratio test can fail numerically.
      return Solve();
    }
    LpSolution solution = Finish(/*strict=*/false);
    if (solution.status == SolveStatus::kOptimal && !within_tolerance_) return Solve();
    return solution;
  }

  const LinearProgram& program() const { return program_; }

 private:
  enum class State : std::uint8_t { kBasic, kAtLower, kAtUpper };

  struct Var {
    double lower;
    double upper;
    State state;
    int column;  // -1 when the tableau does not store the column
    bool artificial;
  };

  double* RowPtr(int i) { return tab_.data() + static_cast<std::size_t>(i) * stride_; }
  double At(int i, int c) const {
    return tab_[static_cast<std::size_t>(i) * stride_ + c];
  }

  double NonbasicValue(const Var& v) const {
    return v.state == State::kAtUpper ? v.upper : v.lower;
  }

  bool CanEnter(const Var& v) const {
    return v.state != State::kBasic && v.column >= 0 && v.lower < v.upper;
  }

  void Reserve(int columns) {
    if (columns <= stride_) return;
    int next = std::max(columns, stride_ * 2);
    std::vector<double> grown(static_cast<std::size_t>(m_) * next, 0.0);
    for (int i = 0; i < m_; ++i) {
      std::copy(RowPtr(i), RowPtr(i) + ncols_,
                grown.begin() + static_cast<std::ptrdiff_t>(i) * next);
    }
    tab_ = std::move(grown);
    stride_ = next;
  }

  int AddColumn(int var) {
    Reserve(ncols_ + 1);
    col_var_.push_back(var);
    d_.push_back(0.0);
    vars_[var].column = ncols_;
    return ncols_++;
  }

  static void SlackBounds(Comparator cmp, double& lower, double& upper) {
    switch (cmp) {
      case Comparator::kLessEqual: lower = 0.0; upper = kInfinity; break;
      case Comparator::kGreaterEqual: lower = -kInfinity; upper = 0.0; break;
      case Comparator::kEqual: lower = 0.0; upper = 0.0; break;
    }
  }

  void Build() {
    const int nv = program_.num_variables();
    m_ = program_.num_rows();
    vars_.clear();
    col_var_.clear();
    d_.clear();
    ncols_ = 0;
    stride_ = 0;
    for (const Variable& v : program_.variables()) {
      State state = std::isinf(v.lower) ? State::kAtUpper : State::kAtLower;
      vars_.push_back({v.lower, v.upper, state, -1, false});
    }
    // Columns for structurals and inequality slacks; reserve some headroom
    // for rows added later.
    int stored = nv;
    for (const Row& row : program_.rows()) {
      if (row.comparator != Comparator::kEqual) ++stored;
    }
    stride_ = stored + 64;
    tab_.assign(static_cast<std::size_t>(m_) * stride_, 0.0);
    for (int j = 0; j < nv; ++j) AddColumn(j);

    std::vector<double> x(nv);
    for (int j = 0; j < nv; ++j) x[j] = NonbasicValue(vars_[j]);

    basis_.assign(m_, -1);
    beta_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const Row& row = program_.rows()[r];
      double lower = 0.0, upper = 0.0;
      SlackBounds(row.comparator, lower, upper);
      const int slack = static_cast<int>(vars_.size());
      vars_.push_back({lower, upper, State::kBasic, -1, false});
      if (row.comparator != Comparator::kEqual) AddColumn(slack);

      const double residual = row.rhs - program_.Activity(row, x);
      double sign = 1.0;
      if (residual >= lower && residual <= upper) {
        basis_[r] = slack;
        beta_[r] = residual;
      } else {
        Var& sv = vars_[slack];
        double bound;
        if (residual < lower) {
          sv.state = State::kAtLower;
          bound = lower;
        } else {
          sv.state = State::kAtUpper;
          bound = upper;
        }
        sign = residual - bound > 0 ? 1.0 : -1.0;
        const int art = static_cast<int>(vars_.size());
        vars_.push_back({0.0, kInfinity, State::kBasic, -1, true});
        basis_[r] = art;
        beta_[r] = std::abs(residual - bound);
      }
      double* trow = RowPtr(r);
      for (const Term& t : row.terms) trow[vars_[t.var].column] += sign * t.coeff;
      if (vars_[slack].column >= 0) trow[vars_[slack].column] = sign;
    }
  }

  void SetPhaseCosts(bool phase_one) {
    cost_.assign(vars_.size(), 0.0);
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (phase_one) {
        cost_[v] = vars_[v].artificial ? 1.0 : 0.0;
      } else if (v < program_.variables().size()) {
        cost_[v] = program_.variables()[v].cost;
      }
    }
    RecomputeReducedCosts();
  }

  void RecomputeReducedCosts() {
    for (int c = 0; c < ncols_; ++c) d_[c] = cost_[col_var_[c]];
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* trow = RowPtr(i);
      for (int c = 0; c < ncols_; ++c) d_[c] -= cb * trow[c];
    }
  }

  SolveStatus RunPhases() {
    bool any_artificial = false;
    for (const Var& v : vars_) any_artificial |= v.artificial;
    if (any_artificial) {
      SetPhaseCosts(/*phase_one=*/true);
      SolveStatus status = PrimalLoop();
      if (status == SolveStatus::kIterationLimit) return status;
      double infeasibility = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (vars_[basis_[i]].artificial) infeasibility += std::max(0.0, beta_[i]);
      }
      if (infeasibility > options_.tolerance) return SolveStatus::kInfeasible;
      for (Var& v : vars_) {
        if (v.artificial) v.upper = 0.0;
      }
    }
    SetPhaseCosts(/*phase_one=*/false);
    return PrimalLoop();
  }

  // Entering column or -1 when the current basis is optimal.
  int Price() const {
    int best = -1;
    double best_score = 0.0;
    int best_var = 0;
    for (int c = 0; c < ncols_; ++c) {
      const Var& v = vars_[col_var_[c]];
      if (!CanEnter(v)) continue;
      double score = 0.0;
      if (v.state == State::kAtLower && d_[c] < -kOptimalityTol) score = -d_[c];
      if (v.state == State::kAtUpper && d_[c] > kOptimalityTol) score = d_[c];
      if (score == 0.0) continue;
      const int var = col_var_[c];
      if (bland_) {
        if (best < 0 || var < best_var) {
          best = c;
          best_var = var;
        }
      } else if (score > best_score || (score == best_score && var < best_var)) {
        best = c;
        best_score = score;
        best_var = var;
      }
    }
    return best;
  }

  SolveStatus PrimalLoop() {
    bland_ = false;
    degenerate_run_ = 0;
    bool refreshed = false;
    while (true) {
      if (iterations_ >= options_.iteration_cap) return SolveStatus::kIterationLimit;
      int c = Price();
      if (c < 0) {
        if (refreshed) return SolveStatus::kOptimal;
        RecomputeReducedCosts();
        refreshed = true;
        c = Price();
        if (c < 0) return SolveStatus::kOptimal;
      }
      refreshed = false;
      const int entering = col_var_[c];
      Var& ev = vars_[entering];
      const double dir = ev.state == State::kAtLower ? 1.0 : -1.0;

      // Two-pass (Harris) ratio test; Bland mode uses exact ties.
      double relaxed = ev.upper - ev.lower;
      for (int i = 0; i < m_; ++i) {
        const double a = At(i, c) * dir;
        const Var& bv = vars_[basis_[i]];
        if (a > kPivotTol && !std::isinf(bv.lower)) {
          relaxed = std::min(relaxed, (beta_[i] - bv.lower + kPrimalTol) / a);
        } else if (a < -kPivotTol && !std::isinf(bv.upper)) {
          relaxed = std::min(relaxed, (bv.upper - beta_[i] + kPrimalTol) / -a);
        }
      }
      int leave = -1;
      double theta = ev.upper - ev.lower;
      if (std::isinf(relaxed)) return SolveStatus::kUnbounded;
      relaxed = std::max(relaxed, 0.0);
      if (relaxed < theta) {
        double best_abs = 0.0;
        double best_ratio = kInfinity;
        for (int i = 0; i < m_; ++i) {
          const double a = At(i, c) * dir;
          const Var& bv = vars_[basis_[i]];
          double ratio;
          if (a > kPivotTol && !std::isinf(bv.lower)) {
            ratio = (beta_[i] - bv.lower) / a;
          } else if (a < -kPivotTol && !std::isinf(bv.upper)) {
            ratio = (bv.upper - beta_[i]) / -a;
          } else {
            continue;
          }
          ratio = std::max(ratio, 0.0);
          if (bland_) {
            if (leave < 0 || ratio < best_ratio - 1e-12 ||
                (ratio <= best_ratio + 1e-12 && basis_[i] < basis_[leave])) {
              leave = i;
              best_ratio = ratio;
            }
          } else if (ratio <= relaxed && std::abs(a) > best_abs) {
            leave = i;
            best_abs = std::abs(a);
            best_ratio = ratio;
          }
        }
        if (leave >= 0) theta = best_ratio;
      }
      ++iterations_;
      if (theta <= 1e-12) {
        if (++degenerate_run_ > kDegenerateRunBeforeBland) bland_ = true;
      } else {
        degenerate_run_ = 0;
        bland_ = false;
      }

      if (theta > 0.0) {
        for (int i = 0; i < m_; ++i) {
          const double a = At(i, c);
          if (a != 0.0) beta_[i] -= dir * theta * a;
        }
      }
      if (leave < 0) {
        ev.state = ev.state == State::kAtLower ? State::kAtUpper : State::kAtLower;
        continue;
      }
      const double entering_value = NonbasicValue(ev) + dir * theta;
      const double a = At(leave, c) * dir;
      Var& lv = vars_[basis_[leave]];
      lv.state = a > 0 ? State::kAtLower : State::kAtUpper;
      if (std::isinf(NonbasicValue(lv))) {
        lv.state = lv.state == State::kAtLower ? State::kAtUpper : State::kAtLower;
      }
      Pivot(leave, c, entering, entering_value);
    }
  }

  SolveStatus DualLoop() {
    SetPhaseCosts(/*phase_one=*/false);
    while (true) {
      if (iterations_ >= options_.iteration_cap) return SolveStatus::kIterationLimit;
      int r = -1;
      double worst = kPrimalTol;
      for (int i = 0; i < m_; ++i) {
        const Var& bv = vars_[basis_[i]];
        const double excess = std::max(bv.lower - beta_[i], beta_[i] - bv.upper);
        if (excess > worst) {
          worst = excess;
          r = i;
        }
      }
      if (r < 0) return SolveStatus::kOptimal;
      const Var& bv = vars_[basis_[r]];
      const bool raise = beta_[r] < bv.lower;
      const double target = raise ? bv.lower : bv.upper;

      int enter = -1;
      double best_ratio = kInfinity;
      double best_abs = 0.0;
      const double* trow = RowPtr(r);
      for (int c = 0; c < ncols_; ++c) {
        const Var& v = vars_[col_var_[c]];
        if (!CanEnter(v)) continue;
        const double dir = v.state == State::kAtLower ? 1.0 : -1.0;
        const double a = trow[c] * dir;
        if (raise ? a > -kPivotTol : a < kPivotTol) continue;
        const double ratio = std::max(0.0, d_[c] * dir) / std::abs(a);
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && std::abs(a) > best_abs)) {
          enter = c;
          best_ratio = ratio;
          best_abs = std::abs(a);
        }
      }
      if (enter < 0) return SolveStatus::kInfeasible;
      ++iterations_;
      const int entering = col_var_[enter];
      Var& ev = vars_[entering];
      const double dir = ev.state == State::kAtLower ? 1.0 : -1.0;
      const double theta = (beta_[r] - target) / (trow[enter] * dir);
      for (int i = 0; i < m_; ++i) {
        const double a = At(i, enter);
        if (a != 0.0) beta_[i] -= dir * theta * a;
      }
      const double entering_value = NonbasicValue(ev) + dir * theta;
      Var& lv = vars_[basis_[r]];
      lv.state = raise ? State::kAtLower : State::kAtUpper;
      Pivot(r, enter, entering, entering_value);
    }
  }

  void Pivot(int r, int c, int entering, double entering_value) {
    double* prow = RowPtr(r);
    const double inv = 1.0 / prow[c];
    nz_.clear();
    for (int j = 0; j < ncols_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        nz_.push_back(j);
      }
    }
    prow[c] = 1.0;
    const bool sparse = nz_.size() * 3 < static_cast<std::size_t>(ncols_);
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = RowPtr(i);
      const double f = row[c];
      if (f == 0.0) continue;
      if (sparse) {
        for (int j : nz_) row[j] -= f * prow[j];
      } else {
        for (int j = 0; j < ncols_; ++j) row[j] -= f * prow[j];
      }
      row[c] = 0.0;
    }
    const double fd = d_[c];
    if (fd != 0.0) {
      for (int j : nz_) d_[j] -= fd * prow[j];
      d_[c] = 0.0;
    }
    vars_[entering].state = State::kBasic;
    basis_[r] = entering;
    beta_[r] = entering_value;
  }

  void AppendRow(int row_index) {
    const Row& row = program_.rows()[row_index];
    double lower = 0.0, upper = 0.0;
    SlackBounds(row.comparator, lower, upper);
    const int slack = static_cast<int>(vars_.size());
    vars_.push_back({lower, upper, State::kBasic, -1, false});
    if (row.comparator != Comparator::kEqual) AddColumn(slack);

    std::vector<int> basic_row(vars_.size(), -1);
    for (int i = 0; i < m_; ++i) basic_row[basis_[i]] = i;

    tab_.resize(static_cast<std::size_t>(m_ + 1) * stride_, 0.0);
    double* nrow = tab_.data() + static_cast<std::size_t>(m_) * stride_;
    std::fill(nrow, nrow + stride_, 0.0);
    double value = row.rhs;
    for (const Term& t : row.terms) {
      const Var& v = vars_[t.var];
      const int i = basic_row[t.var];
      if (i >= 0) {
        value -= t.coeff * beta_[i];
        const double* trow = RowPtr(i);
        for (int j = 0; j < ncols_; ++j) nrow[j] -= t.coeff * trow[j];
      } else {
        value -= t.coeff * NonbasicValue(v);
        nrow[v.column] += t.coeff;
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int col = vars_[basis_[i]].column;
      if (col >= 0) nrow[col] = 0.0;
    }
    if (vars_[slack].column >= 0) nrow[vars_[slack].column] = 1.0;
    basis_.push_back(slack);
    beta_.push_back(value);
    ++m_;
  }

  LpSolution Finish(bool strict = true) {
    LpSolution solution;
    solution.status = status_;
    solution.iterations = iterations_;
    if (status_ != SolveStatus::kOptimal) return solution;
    const int nv = program_.num_variables();
    solution.values.assign(nv, 0.0);
    for (int j = 0; j < nv; ++j) {
      if (vars_[j].state != State::kBasic) solution.values[j] = NonbasicValue(vars_[j]);
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < nv) solution.values[basis_[i]] = beta_[i];
    }
    for (int j = 0; j < nv; ++j) {
      const Var& v = vars_[j];
      double& x = solution.values[j];
      if (x < v.lower && x > v.lower - options_.tolerance) x = v.lower;
      if (x > v.upper && x < v.upper + options_.tolerance) x = v.upper;
    }
    solution.objective = program_.Objective(solution.values);
    within_tolerance_ = program_.MaxViolation(solution.values) <= options_.tolerance;
    CheckInvariant(within_tolerance_ || !strict,
                   "simplex returned a point outside the feasibility tolerance");
    return solution;
  }

  LinearProgram program_;
  SolveOptions options_;
  SolveStatus status_ = SolveStatus::kInfeasible;

  std::vector<Var> vars_;
  std::vector<double> cost_;
  int m_ = 0;
  int ncols_ = 0;
  int stride_ = 0;
  std::vector<double> tab_;
  std::vector<int> col_var_;
  std::vector<int> basis_;
  std::vector<double> beta_;
  std::vector<double> d_;
  std::vector<int> nz_;
  std::int64_t iterations_ = 0;
  bool bland_ = false;
  int degenerate_run_ = 0;
  bool within_tolerance_ = true;
};

SimplexSolver::SimplexSolver(LinearProgram program, SolveOptions options)
    : impl_(std::make_unique<Impl>(std::move(program), options)) {}
SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

LpSolution SimplexSolver::Solve() { return impl_->Solve(); }

LpSolution SimplexSolver::AddRowsAndResolve(std::span<const Row> rows) {
  return impl_->AddRowsAndResolve(rows);
}

const LinearProgram& SimplexSolver::program() const { return impl_->program(); }

LpSolution Solve(const LinearProgram& program, const SolveOptions& options) {
  SimplexSolver solver(program, options);
  return solver.Solve();
}

LpSolution ResolveWithRows(const LinearProgram& program,
                           const LpSolution& previous,
                           std::span<const Row> new_rows,
                           const SolveOptions& options) {
  LinearProgram augmented = program;
  for (const Row& row : new_rows) augmented.AddRow(row);
  if (previous.status == SolveStatus::kOptimal &&
      static_cast<int>(previous.values.size()) == program.num_variables()) {
    bool satisfied = true;
    for (const Row& row : new_rows) {
      satisfied &= augmented.Violation(row, previous.values) <= options.tolerance;
    }
    if (satisfied) return previous;
  }
  return Solve(augmented, options);
}

namespace {

void WriteTerm(std::ostream& out, double coeff, const std::string& name, bool first) {
  if (coeff < 0) {
    out << " - ";
    coeff = -coeff;
  } else if (!first) {
    out << " + ";
  } else {
    out << " ";
  }
  if (coeff != 1.0) out << coeff << " ";
  out << name;
}

}  // namespace

void WriteLpText(const LinearProgram& program, std::ostream& out) {
  const auto& vars = program.variables();
  out << "\\ objective offset " << program.objective_offset() << "\n";
  out << "Minimize\n obj:";
  bool first = true;
  for (const Variable& v : vars) {
    if (v.cost == 0.0) continue;
    WriteTerm(out, v.cost, v.name, first);
    first = false;
  }
  if (first) out << " 0 " << (vars.empty() ? "dummy" : vars.front().name);
  out << "\nSubject To\n";
  for (const Row& row : program.rows()) {
    out << " " << row.name << ":";
    bool head = true;
    for (const Term& t : row.terms) {
      WriteTerm(out, t.coeff, vars[t.var].name, head);
      head = false;
    }
    if (head) out << " 0 " << (vars.empty() ? "dummy" : vars.front().name);
    switch (row.comparator) {
      case Comparator::kLessEqual: out << " <= "; break;
      case Comparator::kGreaterEqual: out << " >= "; break;
      case Comparator::kEqual: out << " = "; break;
    }
    out << row.rhs << "\n";
  }
  out << "Bounds\n";
  for (const Variable& v : vars) {
    out << " ";
    if (std::isinf(v.lower)) {
      out << "-inf";
    } else {
      out << v.lower;
    }
    out << " <= " << v.name << " <= ";
    if (std::isinf(v.upper)) {
      out << "+inf";
    } else {
      out << v.upper;
    }
    out << "\n";
  }
  out << "End\n";
}

}  // namespace rdc::lp
