// Copyright 2026 The mmr Authors
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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SparseLU>

#include "simplex.hpp"

namespace mmr::milp {
namespace internal {

namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kTieTol = 1e-12;
constexpr int kRefactorInterval = 64;
constexpr int kDegenerateBeforeBland = 60;

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

// One solve. Columns 0..n-1 are structural, n..n+m-1 logical; the logical
// column of row i is -e_i so that the system reads A x - r = 0.
class SimplexRun {
 public:
  SimplexRun(const SparseMatrix& a, std::span<const double> cost,
             std::span<const double> lower, std::span<const double> upper,
             std::span<const double> row_lower,
             std::span<const double> row_upper)
      : a_(a),
        m_(static_cast<int>(a.rows())),
        n_(static_cast<int>(a.cols())) {
    const int total = n_ + m_;
    cost_.assign(total, 0.0);
    lo_.resize(total);
    up_.resize(total);
    for (int j = 0; j < n_; ++j) {
      cost_[j] = cost[j];
      lo_[j] = lower[j];
      up_[j] = upper[j];
    }
    for (int i = 0; i < m_; ++i) {
      lo_[n_ + i] = row_lower[i];
      up_[n_ + i] = row_upper[i];
    }
    x_.assign(total, 0.0);
  }

  SimplexResult run(const Basis* warm, std::int64_t iteration_limit) {
    if (warm && !warm->empty() &&
        static_cast<int>(warm->head.size()) == m_ &&
        static_cast<int>(warm->state.size()) == n_ + m_) {
      head_ = warm->head;
      state_ = warm->state;
    } else {
      slack_basis();
    }
    place_nonbasic();
    if (!factorize()) {
      slack_basis();
      place_nonbasic();
      if (!factorize()) return finish(LpStatus::kNumericalFailure);
    }
    recompute_basic();

    if (iteration_limit < 0) {
      iteration_limit = 100 * static_cast<std::int64_t>(n_ + m_) + 10000;
    }
    // A warm basis that is still dual feasible (the usual case after a bound
    // change) is repaired by dual pivots; anything else falls to the primal.
    if (warm && !warm->empty()) {
      const DualOutcome outcome = dual(iteration_limit);
      if (outcome == DualOutcome::kInfeasible) {
        return finish(LpStatus::kInfeasible);
      }
      if (outcome == DualOutcome::kFailed && !refactor()) {
        return finish(LpStatus::kNumericalFailure);
      }
    }
    int degenerate = 0;
    bool bland = false;
    bool fresh = true;  // factorization has no eta updates
    Vector y(m_), column(m_);
    std::vector<double> basic_cost(m_);

    while (true) {
      if (iterations_ >= iteration_limit) {
        return finish(LpStatus::kIterationLimit);
      }
      if (static_cast<int>(etas_.size()) >= kRefactorInterval) {
        if (!refactor()) return finish(LpStatus::kNumericalFailure);
        fresh = true;
      }

      bool phase1 = false;
      for (int i = 0; i < m_; ++i) {
        const int col = head_[i];
        const double v = x_[col];
        if (v < lo_[col] - kPrimalTol) {
          basic_cost[i] = -1.0;
          phase1 = true;
        } else if (v > up_[col] + kPrimalTol) {
          basic_cost[i] = 1.0;
          phase1 = true;
        } else {
          basic_cost[i] = 0.0;
        }
      }
      for (int i = 0; i < m_; ++i) {
        y[i] = phase1 ? basic_cost[i] : cost_[head_[i]];
      }
      btran(y);

      const int entering = price(y, phase1, bland);
      if (entering < 0) {
        if (!fresh) {
          if (!refactor()) return finish(LpStatus::kNumericalFailure);
          fresh = true;
          continue;
        }
        return finish(phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal);
      }

      const double d = reduced_cost(entering, y, phase1);
      const double dir = d < 0.0 ? 1.0 : -1.0;
      load_column(entering, column);
      ftran(column);

      // Ratio test.
      double step = up_[entering] - lo_[entering];  // bound flip
      if (state_[entering] == VarState::kFree) step = kInfinity;
      int leave_row = -1;
      bool leave_at_upper = false;
      double best_alpha = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double alpha = column[i];
        if (std::abs(alpha) < kPivotTol) continue;
        const double rate = -dir * alpha;  // d x_B[i] / d step
        const int col = head_[i];
        const double v = x_[col];
        double limit = kInfinity;
        bool at_upper = false;
        if (phase1 && v < lo_[col] - kPrimalTol) {
          if (rate > 0.0) limit = (lo_[col] - v) / rate;
        } else if (phase1 && v > up_[col] + kPrimalTol) {
          if (rate < 0.0) {
            limit = (v - up_[col]) / -rate;
            at_upper = true;
          }
        } else if (rate < 0.0 && std::isfinite(lo_[col])) {
          limit = std::max(0.0, (v - lo_[col]) / -rate);
        } else if (rate > 0.0 && std::isfinite(up_[col])) {
          limit = std::max(0.0, (up_[col] - v) / rate);
          at_upper = true;
        }
        if (!std::isfinite(limit)) continue;
        bool take = false;
        if (limit < step - kTieTol) {
          take = true;
        } else if (limit <= step + kTieTol && leave_row >= 0) {
          take = bland ? col < head_[leave_row]
                       : std::abs(alpha) > best_alpha;
        } else if (limit <= step + kTieTol && leave_row < 0 &&
                   !std::isfinite(up_[entering] - lo_[entering])) {
          take = true;
        }
        if (take) {
          step = limit;
          leave_row = i;
          leave_at_upper = at_upper;
          best_alpha = std::abs(alpha);
        }
      }
      if (!std::isfinite(step)) {
        return finish(phase1 ? LpStatus::kNumericalFailure
                             : LpStatus::kUnbounded);
      }

      ++iterations_;
      if (step < 1e-12) {
        if (++degenerate > kDegenerateBeforeBland) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }

      x_[entering] += dir * step;
      for (int i = 0; i < m_; ++i) {
        if (column[i] != 0.0) x_[head_[i]] -= dir * step * column[i];
      }
      if (leave_row < 0) {
        state_[entering] = state_[entering] == VarState::kAtLower
                               ? VarState::kAtUpper
                               : VarState::kAtLower;
        x_[entering] = state_[entering] == VarState::kAtLower
                           ? lo_[entering]
                           : up_[entering];
        continue;
      }
      const int leaving = head_[leave_row];
      state_[leaving] = leave_at_upper ? VarState::kAtUpper : VarState::kAtLower;
      x_[leaving] = leave_at_upper ? up_[leaving] : lo_[leaving];
      head_[leave_row] = entering;
      state_[entering] = VarState::kBasic;
      push_eta(leave_row, column);
      fresh = false;
    }
  }

 private:
  enum class DualOutcome { kPrimalFeasible, kInfeasible, kFailed };

  bool movable(int j) const {
    return state_[j] != VarState::kBasic &&
           (state_[j] == VarState::kFree || up_[j] - lo_[j] > 0.0);
  }

  bool dual_feasible(const Vector& y) const {
    for (int j = 0; j < n_ + m_; ++j) {
      if (!movable(j)) continue;
      const double d = reduced_cost(j, y, false);
      if (state_[j] == VarState::kAtLower && d < -kDualTol) return false;
      if (state_[j] == VarState::kAtUpper && d > kDualTol) return false;
      if (state_[j] == VarState::kFree && std::abs(d) > kDualTol) return false;
    }
    return true;
  }

  double row_entry(int j, const Vector& rho) const {
    if (j >= n_) return -rho[j - n_];
    double v = 0.0;
    for (SparseMatrix::InnerIterator it(a_, j); it; ++it) {
      v += rho[it.row()] * it.value();
    }
    return v;
  }

  // Dual simplex with the textbook ratio test; leaves the basis primal
  // feasible (and still dual feasible) on success.
  DualOutcome dual(std::int64_t iteration_limit) {
    Vector y(m_), rho(m_), column(m_);
    for (int i = 0; i < m_; ++i) y[i] = cost_[head_[i]];
    btran(y);
    if (!dual_feasible(y)) return DualOutcome::kFailed;

    while (true) {
      if (iterations_ >= iteration_limit) return DualOutcome::kFailed;
      if (static_cast<int>(etas_.size()) >= kRefactorInterval &&
          !refactor()) {
        return DualOutcome::kFailed;
      }
      int leave_row = -1;
      double worst = kPrimalTol;
      for (int i = 0; i < m_; ++i) {
        const int col = head_[i];
        const double gap = std::max(lo_[col] - x_[col], x_[col] - up_[col]);
        if (gap > worst) {
          worst = gap;
          leave_row = i;
        }
      }
      if (leave_row < 0) return DualOutcome::kPrimalFeasible;

      const int leaving = head_[leave_row];
      const bool to_lower = x_[leaving] < lo_[leaving];
      const double target = to_lower ? lo_[leaving] : up_[leaving];

      for (int i = 0; i < m_; ++i) y[i] = cost_[head_[i]];
      btran(y);
      rho.setZero();
      rho[leave_row] = 1.0;
      btran(rho);

      int entering = -1;
      double best_ratio = kInfinity, best_alpha = 0.0;
      for (int j = 0; j < n_ + m_; ++j) {
        if (!movable(j)) continue;
        const double alpha = row_entry(j, rho);
        if (std::abs(alpha) < kPivotTol) continue;
        // x_leaving moves by -alpha per unit of x_j.
        const double wanted = to_lower ? -alpha : alpha;  // > 0 means x_j up
        const VarState st = state_[j];
        const bool ok = st == VarState::kFree ||
                        (st == VarState::kAtLower && wanted > 0.0) ||
                        (st == VarState::kAtUpper && wanted < 0.0);
        if (!ok) continue;
        const double ratio = std::abs(reduced_cost(j, y, false)) / std::abs(alpha);
        if (ratio < best_ratio - kTieTol ||
            (ratio <= best_ratio + kTieTol && std::abs(alpha) > best_alpha)) {
          best_ratio = ratio;
          best_alpha = std::abs(alpha);
          entering = j;
        }
      }
      if (entering < 0) return DualOutcome::kInfeasible;

      load_column(entering, column);
      ftran(column);
      const double alpha = column[leave_row];
      if (std::abs(alpha) < kPivotTol) return DualOutcome::kFailed;
      const double delta = (x_[leaving] - target) / alpha;
      ++iterations_;
      x_[entering] += delta;
      for (int i = 0; i < m_; ++i) {
        if (column[i] != 0.0) x_[head_[i]] -= delta * column[i];
      }
      state_[leaving] = to_lower ? VarState::kAtLower : VarState::kAtUpper;
      x_[leaving] = target;
      head_[leave_row] = entering;
      state_[entering] = VarState::kBasic;
      push_eta(leave_row, column);
    }
  }

  // Product-form update: the pivot entry plus the other nonzeros.
  struct Eta {
    int row;
    double pivot;
    std::vector<int> index;
    std::vector<double> value;
  };

  void push_eta(int row, const Vector& column) {
    Eta eta{row, column[row], {}, {}};
    for (int i = 0; i < m_; ++i) {
      if (i != row && column[i] != 0.0) {
        eta.index.push_back(i);
        eta.value.push_back(column[i]);
      }
    }
    etas_.push_back(std::move(eta));
  }

  void slack_basis() {
    head_.resize(m_);
    state_.assign(n_ + m_, VarState::kAtLower);
    for (int i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      state_[n_ + i] = VarState::kBasic;
    }
  }

  // Puts every nonbasic column on a finite bound.
  void place_nonbasic() {
    for (int j = 0; j < n_ + m_; ++j) {
      VarState& s = state_[j];
      if (s == VarState::kBasic) continue;
      const bool has_lo = std::isfinite(lo_[j]);
      const bool has_up = std::isfinite(up_[j]);
      if (s == VarState::kAtUpper && !has_up) s = VarState::kAtLower;
      if (s == VarState::kAtLower && !has_lo) {
        s = has_up ? VarState::kAtUpper : VarState::kFree;
      }
      if (s == VarState::kFree && (has_lo || has_up)) {
        s = has_lo ? VarState::kAtLower : VarState::kAtUpper;
      }
      x_[j] = s == VarState::kAtLower   ? lo_[j]
              : s == VarState::kAtUpper ? up_[j]
                                        : 0.0;
    }
  }

  bool factorize() {
    etas_.clear();
    if (m_ == 0) return true;
    std::vector<Eigen::Triplet<double>> triplets;
    for (int i = 0; i < m_; ++i) {
      const int col = head_[i];
      if (col < n_) {
        for (SparseMatrix::InnerIterator it(a_, col); it; ++it) {
          triplets.emplace_back(static_cast<int>(it.row()), i, it.value());
        }
      } else {
        triplets.emplace_back(col - n_, i, -1.0);
      }
    }
    SparseMatrix basis(m_, m_);
    basis.setFromTriplets(triplets.begin(), triplets.end());
    basis.makeCompressed();
    lu_.analyzePattern(basis);
    lu_.factorize(basis);
    return lu_.info() == Eigen::Success;
  }

  bool refactor() {
    if (!factorize()) {
      slack_basis();
      place_nonbasic();
      if (!factorize()) return false;
    }
    recompute_basic();
    return true;
  }

  void recompute_basic() {
    if (m_ == 0) return;
    Vector rhs = Vector::Zero(m_);
    for (int j = 0; j < n_ + m_; ++j) {
      if (state_[j] == VarState::kBasic || x_[j] == 0.0) continue;
      if (j < n_) {
        for (SparseMatrix::InnerIterator it(a_, j); it; ++it) {
          rhs[it.row()] -= it.value() * x_[j];
        }
      } else {
        rhs[j - n_] += x_[j];
      }
    }
    ftran(rhs);
    for (int i = 0; i < m_; ++i) x_[head_[i]] = rhs[i];
  }

  void load_column(int j, Vector& out) const {
    out.setZero(m_);
    if (j < n_) {
      for (SparseMatrix::InnerIterator it(a_, j); it; ++it) {
        out[it.row()] = it.value();
      }
    } else {
      out[j - n_] = -1.0;
    }
  }

  void ftran(Vector& v) {
    if (m_ == 0) return;
    v = lu_.solve(v);
    for (const Eta& eta : etas_) {
      const double pivot = v[eta.row] / eta.pivot;
      if (pivot != 0.0) {
        for (std::size_t k = 0; k < eta.index.size(); ++k) {
          v[eta.index[k]] -= pivot * eta.value[k];
        }
      }
      v[eta.row] = pivot;
    }
  }

  void btran(Vector& y) {
    if (m_ == 0) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double others = 0.0;
      for (std::size_t k = 0; k < it->index.size(); ++k) {
        others += y[it->index[k]] * it->value[k];
      }
      y[it->row] = (y[it->row] - others) / it->pivot;
    }
    y = lu_.transpose().solve(y);
  }

  double reduced_cost(int j, const Vector& y, bool phase1) const {
    double d = phase1 ? 0.0 : cost_[j];
    if (j < n_) {
      for (SparseMatrix::InnerIterator it(a_, j); it; ++it) {
        d -= y[it.row()] * it.value();
      }
    } else {
      d += y[j - n_];
    }
    return d;
  }

  int price(const Vector& y, bool phase1, bool bland) const {
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      const VarState s = state_[j];
      if (s == VarState::kBasic) continue;
      if (s != VarState::kFree && up_[j] - lo_[j] <= 0.0) continue;  // fixed
      const double d = reduced_cost(j, y, phase1);
      double score = 0.0;
      if (s == VarState::kAtLower && d < -kDualTol) score = -d;
      if (s == VarState::kAtUpper && d > kDualTol) score = d;
      if (s == VarState::kFree && std::abs(d) > kDualTol) score = std::abs(d);
      if (score <= 0.0) continue;
      if (bland) return j;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  SimplexResult finish(LpStatus status) {
    SimplexResult result;
    result.status = status;
    result.iterations = iterations_;
    result.values.assign(x_.begin(), x_.begin() + n_);
    if (status == LpStatus::kOptimal) {
      // Snap values that drifted within tolerance of a bound.
      for (int j = 0; j < n_; ++j) {
        double& v = result.values[j];
        if (v < lo_[j]) v = lo_[j];
        if (v > up_[j]) v = up_[j];
      }
    }
    for (int j = 0; j < n_; ++j) result.objective += cost_[j] * result.values[j];
    result.basis.head = head_;
    result.basis.state = state_;
    return result;
  }

  const SparseMatrix& a_;
  int m_, n_;
  std::vector<double> cost_, lo_, up_, x_;
  std::vector<int> head_;
  std::vector<VarState> state_;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
  std::int64_t iterations_ = 0;
};

}  // namespace

SimplexSolver::SimplexSolver(const MipModel& model) {
  model.validate();
  const int n = model.num_variables();
  const int m = model.num_constraints();
  const double sign = model.sense() == Sense::kMaximize ? -1.0 : 1.0;
  for (const Variable& v : model.variables()) {
    cost_.push_back(sign * v.objective);
    lower_.push_back(v.is_binary ? std::max(v.lower, 0.0) : v.lower);
    upper_.push_back(v.is_binary ? std::min(v.upper, 1.0) : v.upper);
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (int i = 0; i < m; ++i) {
    const Constraint& c = model.constraints()[i];
    for (const Term& t : c.terms) {
      if (t.coef != 0.0) triplets.emplace_back(i, t.var, t.coef);
    }
    switch (c.relation) {
      case Relation::kLessEqual:
        row_lower_.push_back(-kInfinity);
        row_upper_.push_back(c.rhs);
        break;
      case Relation::kGreaterEqual:
        row_lower_.push_back(c.rhs);
        row_upper_.push_back(kInfinity);
        break;
      case Relation::kEqual:
        row_lower_.push_back(c.rhs);
        row_upper_.push_back(c.rhs);
        break;
    }
  }
  matrix_.resize(m, n);
  // Duplicate entries are summed.
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  matrix_.makeCompressed();
}

SimplexResult SimplexSolver::solve(std::span<const double> lower,
                                   std::span<const double> upper,
                                   const Basis* warm,
                                   std::int64_t iteration_limit) const {
  for (int j = 0; j < num_structural(); ++j) {
    if (lower[j] > upper[j]) {
      SimplexResult result;
      result.status = LpStatus::kInfeasible;
      return result;
    }
  }
  SimplexRun run(matrix_, cost_, lower, upper, row_lower_, row_upper_);
  return run.run(warm, iteration_limit);
}

}  // namespace internal

LpSolution solve_lp(const MipModel& model) {
  const internal::SimplexSolver solver(model);
  const auto result = solver.solve(solver.lower(), solver.upper());
  LpSolution solution;
  solution.status = result.status;
  solution.values = result.values;
  solution.iterations = result.iterations;
  solution.objective = model.sense() == Sense::kMaximize ? -result.objective
                                                         : result.objective;
  if (solution.status == LpStatus::kOptimal &&
      model.max_violation(solution.values) > 1e-6) {
    solution.status = LpStatus::kNumericalFailure;
  }
  return solution;
}

}  // namespace mmr::milp
