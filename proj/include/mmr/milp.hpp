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

#ifndef MMR_MILP_HPP_
#define MMR_MILP_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mmr::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  double objective = 0.0;
  bool is_binary = false;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

/// A linear model over bounded variables, some of them binary. Lower bounds
/// must be finite.
class MipModel {
 public:
  explicit MipModel(Sense sense = Sense::kMinimize) : sense_(sense) {}

  int add_variable(std::string name, double lower, double upper,
                   double objective = 0.0);
  int add_binary(std::string name, double objective = 0.0);
  int add_constraint(std::vector<Term> terms, Relation relation, double rhs,
                     std::string name = {});

  void set_sense(Sense sense) { sense_ = sense; }
  void set_bounds(int var, double lower, double upper);
  void set_objective(int var, double coef);

  Sense sense() const { return sense_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Variable& variable(int var) const { return variables_.at(var); }
  int num_binaries() const;

  /// Throws std::invalid_argument when an invariant is broken: binaries
  /// outside [0,1], non-finite coefficients, infinite lower bounds, or an
  /// out-of-range variable index.
  void validate() const;

  double objective_value(std::span<const double> values) const;
  /// Largest violation of any bound or constraint.
  double max_violation(std::span<const double> values) const;
  /// Largest distance of a binary from {0, 1}.
  double max_integrality_violation(std::span<const double> values) const;

 private:
  Sense sense_;
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
};

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kNumericalFailure,
};

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  std::vector<double> values;
  /// In the model's own sense.
  double objective = 0.0;
  std::int64_t iterations = 0;
};

/// Solves the LP relaxation (binaries relaxed to [0, 1]) with a
/// bounded-variable primal simplex.
LpSolution solve_lp(const MipModel& model);

enum class MipStatus {
  kOptimal,
  /// Node limit reached with an incumbent.
  kFeasible,
  kInfeasible,
  /// Wall-clock limit reached; an incumbent may or may not exist.
  kTimeLimit,
  /// Node limit reached without an incumbent.
  kNodeLimit,
  kUnbounded,
  kNumericalFailure,
};

const char* to_string(MipStatus status);
const char* to_string(LpStatus status);

struct MipOptions {
  double time_limit = kInfinity;  // seconds
  /// Stop when |bound - incumbent| <= relative_gap * max(1, |incumbent|).
  double relative_gap = 0.0;
  std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
  /// Depth-first plunging from the best node until the first incumbent.
  bool plunge_until_incumbent = true;
};

struct MipSolution {
  MipStatus status = MipStatus::kNumericalFailure;
  std::vector<double> values;  // empty without an incumbent
  double objective = 0.0;
  /// Dual bound in the model's sense (>= objective when maximizing).
  double best_bound = 0.0;
  std::int64_t node_count = 0;
  std::int64_t lp_iterations = 0;
  double wall_time = 0.0;

  bool has_incumbent() const { return !values.empty(); }
};

inline constexpr double kFeasibilityTolerance = 1e-7;
inline constexpr double kIntegralityTolerance = 1e-6;

/// Best-bound branch and bound on the most fractional binary.
MipSolution solve_mip(const MipModel& model, const MipOptions& options = {});
MipSolution solve_mip(const MipModel& model, double time_limit,
                      double gap_tolerance);

/// Writes the model in CPLEX LP text format (see docs/lp_format.md).
void write_lp_format(std::ostream& out, const MipModel& model);

}  // namespace mmr::milp

#endif  // MMR_MILP_HPP_
