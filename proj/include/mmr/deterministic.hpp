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

#ifndef MMR_DETERMINISTIC_HPP_
#define MMR_DETERMINISTIC_HPP_

#include <vector>

#include "mmr/core.hpp"

namespace mmr {

/// Optimal schedule for a fixed scenario.
struct BestResponse {
  /// Sorted job ids that complete on time.
  std::vector<int> ontime_set;
  /// Total weight of the jobs outside ontime_set.
  Rational opt_value;
  /// ontime_set in nondecreasing processing time (ties by id), then the
  /// remaining jobs in id order.
  Schedule schedule;
};

enum class KnapsackAlgorithm {
  kAuto,
  /// Table over the integer-scaled capacity.
  kDynamicProgramming,
  /// Depth-first search with the fractional-knapsack bound.
  kBranchAndBound,
};

/// Solves min_y F(y, p): a 0/1 knapsack with capacity d over the scenario's
/// processing times. Among maximum-weight on-time sets the one with the least
/// total processing time is returned, then the lexicographically smallest.
BestResponse best_response(const Scenario& scenario, const Instance& instance,
                           KnapsackAlgorithm algorithm = KnapsackAlgorithm::kAuto);

/// Sort by processing time and keep the longest prefix that fits. Optimal
/// only when all weights are equal.
BestResponse unweighted_best_response(const Scenario& scenario,
                                      const Instance& instance);

/// Best response to the scenario of interval midpoints.
Schedule midpoint_heuristic(const Instance& instance);

/// The on-time-first schedule used by BestResponse.
Schedule ontime_first_schedule(const std::vector<int>& ontime_set,
                               const Scenario& scenario);

}  // namespace mmr

#endif  // MMR_DETERMINISTIC_HPP_
