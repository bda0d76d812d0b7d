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
#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <queue>
#include <utility>

#include "simplex.hpp"

namespace mmr::milp {

namespace {

using internal::Basis;
using internal::SimplexResult;
using internal::SimplexSolver;

// Open subproblem: binaries fixed along the path from the root.
struct Node {
  std::vector<std::pair<int, std::int8_t>> fixings;
  std::shared_ptr<const Basis> warm;
  double bound = -kInfinity;  // parent LP value, minimization form
  std::int64_t id = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MipModel& model, const MipOptions& options)
      : model_(model),
        options_(options),
        solver_(model),
        start_(std::chrono::steady_clock::now()) {
    for (int j = 0; j < model.num_variables(); ++j) {
      if (model.variable(j).is_binary) binaries_.push_back(j);
    }
  }

  MipSolution run() {
    MipSolution out;
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    open.push(Node{{}, nullptr, -kInfinity, next_id_++});
    std::optional<Node> plunge;
    bool stopped_by_time = false;
    bool stopped_by_nodes = false;
    bool lp_failure = false;

    while (plunge || !open.empty()) {
      if (elapsed() >= options_.time_limit) {
        stopped_by_time = true;
        break;
      }
      if (nodes_ >= options_.node_limit) {
        stopped_by_nodes = true;
        break;
      }
      if (has_incumbent_ && gap_closed(global_bound(open, plunge))) break;

      Node node;
      if (plunge) {
        node = std::move(*plunge);
        plunge.reset();
      } else {
        node = open.top();
        open.pop();
      }
      if (has_incumbent_ && prunable(node.bound)) continue;

      std::vector<double> lower = solver_.lower();
      std::vector<double> upper = solver_.upper();
      for (auto [var, value] : node.fixings) lower[var] = upper[var] = value;
      SimplexResult lp = solver_.solve(lower, upper, node.warm.get());
      ++nodes_;
      iterations_ += lp.iterations;
      if (lp.status == LpStatus::kInfeasible) continue;
      if (lp.status == LpStatus::kUnbounded) {
        out.status = MipStatus::kUnbounded;
        return finish(out);
      }
      if (lp.status != LpStatus::kOptimal) {
        lp_failure = true;
        continue;
      }
      if (has_incumbent_ && prunable(lp.objective)) continue;

      const int branch_var = most_fractional(lp.values);
      if (branch_var < 0) {
        accept_incumbent(lp, lower, upper);
        continue;
      }
      auto warm = std::make_shared<const Basis>(std::move(lp.basis));
      Node down{node.fixings, warm, lp.objective, next_id_++};
      down.fixings.emplace_back(branch_var, 0);
      Node up{std::move(node.fixings), warm, lp.objective, next_id_++};
      up.fixings.emplace_back(branch_var, 1);
      if (options_.plunge_until_incumbent && !has_incumbent_) {
        const bool go_up = lp.values[branch_var] >= 0.5;
        plunge = go_up ? std::move(up) : std::move(down);
        open.push(go_up ? std::move(down) : std::move(up));
      } else {
        open.push(std::move(down));
        open.push(std::move(up));
      }
    }

    const double bound = global_bound(open, plunge);
    if (!has_incumbent_) {
      if (stopped_by_time) {
        out.status = MipStatus::kTimeLimit;
      } else if (stopped_by_nodes) {
        out.status = MipStatus::kNodeLimit;
      } else {
        out.status = lp_failure ? MipStatus::kNumericalFailure
                                : MipStatus::kInfeasible;
      }
      out.best_bound = to_model_sense(bound);
      return finish(out);
    }
    if (stopped_by_time && !gap_closed(bound)) {
      out.status = MipStatus::kTimeLimit;
    } else if (stopped_by_nodes && !gap_closed(bound)) {
      out.status = MipStatus::kFeasible;
    } else {
      out.status = MipStatus::kOptimal;
    }
    out.values = incumbent_;
    out.objective = model_.objective_value(incumbent_);
    out.best_bound = to_model_sense(
        out.status == MipStatus::kOptimal && !std::isfinite(bound)
            ? incumbent_value_
            : std::min(bound, incumbent_value_));
    return finish(out);
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

  double to_model_sense(double v) const {
    return model_.sense() == Sense::kMaximize ? -v : v;
  }

  double tolerance() const {
    return std::max(1e-9, options_.relative_gap *
                              std::max(1.0, std::abs(incumbent_value_)));
  }

  bool prunable(double bound) const {
    return bound >= incumbent_value_ - tolerance();
  }

  bool gap_closed(double bound) const {
    return incumbent_value_ - bound <= tolerance();
  }

  double global_bound(const auto& open, const std::optional<Node>& plunge) const {
    double bound = kInfinity;
    if (!open.empty()) bound = open.top().bound;
    if (plunge) bound = std::min(bound, plunge->bound);
    if (has_incumbent_) bound = std::min(bound, incumbent_value_);
    return bound;
  }

  int most_fractional(const std::vector<double>& values) const {
    int best = -1;
    double best_distance = 0.0;
    for (int j : binaries_) {
      const double v = values[j];
      const double frac = std::abs(v - std::round(v));
      if (frac <= kIntegralityTolerance) continue;
      if (best < 0 || frac > best_distance + 1e-12) {
        best = j;
        best_distance = frac;
      }
    }
    return best;
  }

  // Rounds the binaries and re-solves the continuous part with them fixed so
  // the stored point satisfies the constraints to LP precision.
  void accept_incumbent(const SimplexResult& lp, std::vector<double> lower,
                        std::vector<double> upper) {
    std::vector<double> values = lp.values;
    for (int j : binaries_) {
      values[j] = std::round(values[j]);
      lower[j] = upper[j] = values[j];
    }
    const SimplexResult polished = solver_.solve(lower, upper, &lp.basis);
    if (polished.status == LpStatus::kOptimal) {
      values = polished.values;
      for (int j : binaries_) values[j] = lower[j];
    }
    if (model_.max_violation(values) > kFeasibilityTolerance) return;
    const double value = model_.sense() == Sense::kMaximize
                             ? -model_.objective_value(values)
                             : model_.objective_value(values);
    if (!has_incumbent_ || value < incumbent_value_) {
      has_incumbent_ = true;
      incumbent_value_ = value;
      incumbent_ = std::move(values);
    }
  }

  MipSolution& finish(MipSolution& out) {
    out.node_count = nodes_;
    out.lp_iterations = iterations_;
    out.wall_time = elapsed();
    return out;
  }

  const MipModel& model_;
  MipOptions options_;
  SimplexSolver solver_;
  std::chrono::steady_clock::time_point start_;
  std::vector<int> binaries_;
  std::int64_t next_id_ = 0;
  std::int64_t nodes_ = 0;
  std::int64_t iterations_ = 0;
  bool has_incumbent_ = false;
  double incumbent_value_ = kInfinity;  // minimization form
  std::vector<double> incumbent_;
};

}  // namespace

MipSolution solve_mip(const MipModel& model, const MipOptions& options) {
  BranchAndBound search(model, options);
  return search.run();
}

MipSolution solve_mip(const MipModel& model, double time_limit,
                      double gap_tolerance) {
  MipOptions options;
  options.time_limit = time_limit;
  options.relative_gap = gap_tolerance;
  return solve_mip(model, options);
}

}  // namespace mmr::milp
