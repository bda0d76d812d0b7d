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

#ifndef MMR_SEARCH_HPP_
#define MMR_SEARCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mmr/core.hpp"
#include "mmr/milp.hpp"
#include "mmr/random.hpp"

namespace mmr {

struct SearchParams {
  /// Randomized rounding iterations after the phase-1 solve (M).
  int rounding_iterations = 100;
  /// Swap local-search iterations (N).
  int local_search_iterations = 1000;
  /// Worse swaps are accepted when a uniform draw r satisfies r > alpha.
  double alpha = 0.1;
  double phase1_time_limit = 60.0;  // seconds
  /// Work cap for the phase-1 branch and bound. Unlike the time limit it
  /// keeps runs reproducible.
  std::int64_t phase1_node_limit = 200;
  std::uint64_t rng_seed = 0;
  /// Update the best schedule when the candidate beats the current schedule
  /// rather than the best one seen so far.
  bool literal_best_update = false;
  /// Accept worse swaps when r < alpha instead of r > alpha.
  bool accept_worse_below_alpha = false;

  /// Throws std::invalid_argument on negative counts or alpha outside [0,1].
  void validate() const;
};

struct SearchStep {
  int iteration = 0;
  /// Empty when every re-draw hit the tabu set.
  std::optional<Rational> candidate_z;
  bool accepted = false;
  Rational best_z;
};

struct SearchTrace {
  // Phase 1.
  milp::MipStatus phase1_status = milp::MipStatus::kNumericalFailure;
  std::int64_t phase1_nodes = 0;
  bool phase1_fallback = false;  // midpoint schedule used as x0
  Rational phase1_decoded_z;     // Z of the decoded x0
  Rational phase1_z;             // Z after randomized rounding
  std::int64_t rounding_evaluations = 0;
  double phase1_seconds = 0.0;

  // Phase 2.
  std::vector<SearchStep> steps;
  std::size_t tabu_size = 0;
  std::int64_t evaluations = 0;
  std::int64_t skipped_iterations = 0;
  double phase2_seconds = 0.0;
};

/// Columns: iteration,candidate_z,accepted,best_z.
void write_trace_csv(std::ostream& out, const SearchTrace& trace);

/// Schedule for a 0/1 on-time pattern: jobs with q = 1 first by
/// nondecreasing p_max, then the rest by nondecreasing p_min, ties by id.
/// The adversary pattern z does not affect the order.
Schedule round_repair(const std::vector<bool>& z, const std::vector<bool>& q,
                      const Instance& instance);

/// Solves the phase-1 model, decodes x0 and the fractional z~, q~, then
/// keeps the best of `rounding_iterations` randomized roundings. Falls back
/// to the midpoint schedule when the model yields no incumbent.
Schedule phase1(const Instance& instance, const SearchParams& params, Rng& rng,
                SearchTrace* trace = nullptr);

/// Randomized pairwise-swap search with a tabu set of visited schedules.
Schedule phase2(const Schedule& initial, const Instance& instance,
                const SearchParams& params, Rng& rng,
                SearchTrace* trace = nullptr);

struct TwoPhaseResult {
  Schedule schedule;
  Rational max_regret;
  SearchTrace trace;
};

TwoPhaseResult two_phase(const Instance& instance, const SearchParams& params);

}  // namespace mmr

#endif  // MMR_SEARCH_HPP_
