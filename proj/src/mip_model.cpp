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
#include <stdexcept>

#include "mmr/milp.hpp"

namespace mmr::milp {

namespace {

void check_variable(const Variable& v) {
  if (!std::isfinite(v.lower)) {
    throw std::invalid_argument("variable " + v.name +
                                ": lower bound must be finite");
  }
  if (std::isnan(v.upper) || v.upper < v.lower) {
    throw std::invalid_argument("variable " + v.name + ": empty bounds");
  }
  if (!std::isfinite(v.objective)) {
    throw std::invalid_argument("variable " + v.name +
                                ": non-finite objective");
  }
  if (v.is_binary && (v.lower < 0.0 || v.upper > 1.0)) {
    throw std::invalid_argument("binary " + v.name + " outside [0,1]");
  }
}

void check_constraint(const Constraint& c, int num_variables) {
  if (!std::isfinite(c.rhs)) {
    throw std::invalid_argument("constraint " + c.name + ": non-finite rhs");
  }
  for (const Term& t : c.terms) {
    if (t.var < 0 || t.var >= num_variables) {
      throw std::invalid_argument("constraint " + c.name +
                                  ": bad variable index");
    }
    if (!std::isfinite(t.coef)) {
      throw std::invalid_argument("constraint " + c.name +
                                  ": non-finite coefficient");
    }
  }
}

}  // namespace

int MipModel::add_variable(std::string name, double lower, double upper,
                           double objective) {
  Variable v{std::move(name), lower, upper, objective, false};
  check_variable(v);
  variables_.push_back(std::move(v));
  return num_variables() - 1;
}

int MipModel::add_binary(std::string name, double objective) {
  Variable v{std::move(name), 0.0, 1.0, objective, true};
  check_variable(v);
  variables_.push_back(std::move(v));
  return num_variables() - 1;
}

int MipModel::add_constraint(std::vector<Term> terms, Relation relation,
                             double rhs, std::string name) {
  Constraint c{std::move(name), std::move(terms), relation, rhs};
  check_constraint(c, num_variables());
  constraints_.push_back(std::move(c));
  return num_constraints() - 1;
}

void MipModel::set_bounds(int var, double lower, double upper) {
  Variable v = variables_.at(var);
  v.lower = lower;
  v.upper = upper;
  check_variable(v);
  variables_[var] = std::move(v);
}

void MipModel::set_objective(int var, double coef) {
  Variable v = variables_.at(var);
  v.objective = coef;
  check_variable(v);
  variables_[var] = std::move(v);
}

int MipModel::num_binaries() const {
  return static_cast<int>(std::count_if(
      variables_.begin(), variables_.end(),
      [](const Variable& v) { return v.is_binary; }));
}

void MipModel::validate() const {
  for (const Variable& v : variables_) check_variable(v);
  for (const Constraint& c : constraints_) check_constraint(c, num_variables());
}

double MipModel::objective_value(std::span<const double> values) const {
  double total = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    total += variables_[j].objective * values[j];
  }
  return total;
}

double MipModel::max_violation(std::span<const double> values) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max(worst, variables_[j].lower - values[j]);
    worst = std::max(worst, values[j] - variables_[j].upper);
  }
  for (const Constraint& c : constraints_) {
    double activity = 0.0;
    for (const Term& t : c.terms) activity += t.coef * values[t.var];
    switch (c.relation) {
      case Relation::kLessEqual:
        worst = std::max(worst, activity - c.rhs);
        break;
      case Relation::kGreaterEqual:
        worst = std::max(worst, c.rhs - activity);
        break;
      case Relation::kEqual:
        worst = std::max(worst, std::abs(activity - c.rhs));
        break;
    }
  }
  return worst;
}

double MipModel::max_integrality_violation(
    std::span<const double> values) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    if (!variables_[j].is_binary) continue;
    worst = std::max(worst, std::abs(values[j] - std::round(values[j])));
  }
  return worst;
}

const char* to_string(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal: return "optimal";
    case MipStatus::kFeasible: return "feasible";
    case MipStatus::kInfeasible: return "infeasible";
    case MipStatus::kTimeLimit: return "time_limit";
    case MipStatus::kNodeLimit: return "node_limit";
    case MipStatus::kUnbounded: return "unbounded";
    case MipStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
    case LpStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

}  // namespace mmr::milp
