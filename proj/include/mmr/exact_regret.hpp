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

#ifndef MMR_EXACT_REGRET_HPP_
#define MMR_EXACT_REGRET_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "mmr/core.hpp"
#include "mmr/deterministic.hpp"

namespace mmr {

/// Maximum regret of a schedule together with a witnessing scenario.
///
/// A candidate is a pair (l, T): positions l..n of the schedule are forced
/// late (prefix of length l reaches d + epsilon) and T is an on-time set for
/// the adversary. Its regret is w(late suffix) + w(T) - W. The witness is the
/// scenario built from the best candidate. With an exact epsilon (integer
/// data, epsilon = 1) evaluate(x, worst_scenario).objective minus
/// adversary.opt_value equals value; otherwise it is at least value.
struct RegretCertificate {
  Rational value;
  Scenario worst_scenario;
  /// Independently recomputed best response to worst_scenario.
  BestResponse adversary;
  /// 1-based; size()+1 means no forced-late suffix.
  std::size_t late_boundary = 1;
  /// The candidate on-time set T (sorted ids).
  std::vector<int> adversary_ontime;
};

/// Exact max regret via the per-boundary decomposition. Each boundary solves
/// a two-constraint knapsack by branch and bound.
RegretCertificate max_regret(const Schedule& schedule,
                             const Instance& instance);

/// Same value as max_regret(...).value without building the certificate.
Rational max_regret_value(const Schedule& schedule, const Instance& instance);

/// Shared sum sigma of the jobs in T that also lie in the first l positions,
/// chosen as the lower end of
///   [max(sum_S p_min, d + eps - sum_{P\T} p_max),
///    min(sum_S p_max, d - sum_{T\P} p_min)],
/// or nullopt when the interval is empty. l is 1-based; l = n+1 drops the
/// prefix condition.
std::optional<Rational> feasible_interval(std::size_t l,
                                          const std::vector<int>& adversary_ontime,
                                          const Schedule& schedule,
                                          const Instance& instance);

/// Scenario realizing a feasible (l, T, sigma): p_max on P\T, p_min on T\P,
/// the shared jobs filled greedily by id to sum sigma, p_min elsewhere.
/// Throws std::logic_error if the result violates the candidate conditions.
Scenario scenario_from_certificate(std::size_t l,
                                   const std::vector<int>& adversary_ontime,
                                   const Rational& sigma,
                                   const Schedule& schedule,
                                   const Instance& instance);

inline constexpr std::size_t kBruteForceMaxJobs = 15;

/// Enumerates every boundary and every subset T. Oracle for max_regret;
/// throws std::invalid_argument above kBruteForceMaxJobs jobs.
RegretCertificate brute_force_max_regret(const Schedule& schedule,
                                         const Instance& instance);

}  // namespace mmr

#endif  // MMR_EXACT_REGRET_HPP_
