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
#include <sstream>

#include <gtest/gtest.h>

#include "mmr/deterministic.hpp"
#include "mmr/exact_regret.hpp"
#include "mmr/harness.hpp"
#include "mmr/search.hpp"
#include "oracles.hpp"

namespace mmr {
namespace {

Instance three_identical() {
  return Instance({{0, 1, 3, 1}, {1, 1, 3, 1}, {2, 1, 3, 1}}, 5);
}

// w = (10, 1), p1 in [2,4], p2 = 1, d = 4.
Instance two_jobs() { return Instance({{0, 2, 4, 10}, {1, 1, 1, 1}}, 4); }

SearchParams quick(std::uint64_t seed) {
  SearchParams params;
  params.rounding_iterations = 20;
  params.local_search_iterations = 60;
  params.phase1_node_limit = 20;
  params.rng_seed = seed;
  return params;
}

// Replays the current-schedule value from a trace.
std::vector<Rational> current_values(const Rational& start,
                                     const SearchTrace& trace) {
  std::vector<Rational> out{start};
  for (const SearchStep& step : trace.steps) {
    if (step.accepted) out.push_back(*step.candidate_z);
    else out.push_back(out.back());
  }
  return out;
}

TEST(RoundRepair, SortRules) {
  const Instance inst({{0, 5, 9, 1}, {1, 3, 20, 1}, {2, 4, 6, 1}, {3, 3, 6, 1}}, 10);
  EXPECT_EQ(round_repair({1, 1, 1, 1}, {1, 1, 1, 1}, inst).perm(),
            (std::vector<int>{2, 3, 0, 1}));
  EXPECT_EQ(round_repair({0, 0, 0, 0}, {0, 0, 0, 0}, inst).perm(),
            (std::vector<int>{1, 3, 2, 0}));
  EXPECT_EQ(round_repair({0, 0, 0, 0}, {0, 1, 0, 1}, inst).perm(),
            (std::vector<int>{3, 1, 2, 0}));
}

TEST(RoundRepair, ThreeJobExample) {
  EXPECT_EQ(round_repair({0, 0, 0}, {1, 0, 1}, three_identical()).perm(),
            (std::vector<int>{0, 2, 1}));
}

TEST(RoundRepair, ZIsIgnoredAndSizeChecked) {
  const Instance inst = generate_instance({6, true, 4});
  const std::vector<bool> q{1, 0, 0, 1, 1, 0};
  EXPECT_EQ(round_repair({1, 1, 1, 1, 1, 1}, q, inst).perm(),
            round_repair({0, 1, 0, 1, 0, 1}, q, inst).perm());
  EXPECT_THROW(round_repair({1, 0}, {1, 0, 1}, three_identical()),
               std::invalid_argument);
}

TEST(SearchParams, Validate) {
  SearchParams p;
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.rounding_iterations, 100);
  EXPECT_EQ(p.local_search_iterations, 1000);
  EXPECT_DOUBLE_EQ(p.alpha, 0.1);
  EXPECT_DOUBLE_EQ(p.phase1_time_limit, 60.0);
  p.alpha = 1.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.alpha = 0.0;
  p.rounding_iterations = -1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.rounding_iterations = 0;
  p.local_search_iterations = -3;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.local_search_iterations = 0;
  p.phase1_node_limit = -1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Phase1, NoRoundingKeepsDecodedSchedule) {
  const Instance inst = generate_instance({6, true, 9});
  SearchParams params = quick(1);
  params.rounding_iterations = 0;
  Rng rng(1);
  SearchTrace trace;
  const Schedule x0 = phase1(inst, params, rng, &trace);
  EXPECT_EQ(trace.rounding_evaluations, 0);
  EXPECT_EQ(trace.phase1_z, trace.phase1_decoded_z);
  EXPECT_EQ(max_regret_value(x0, inst), trace.phase1_z);
}

TEST(Phase1, RoundingOnlyImproves) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Instance inst = generate_instance({7, seed % 2 == 0, seed});
    Rng rng(seed);
    SearchTrace trace;
    const Schedule x0 = phase1(inst, quick(seed), rng, &trace);
    EXPECT_LE(trace.phase1_z, trace.phase1_decoded_z);
    EXPECT_EQ(max_regret_value(x0, inst), trace.phase1_z);
    EXPECT_EQ(trace.rounding_evaluations, 20);
  }
}

TEST(Phase1, ThreeJobExample) {
  Rng rng(3);
  SearchTrace trace;
  const Schedule x0 = phase1(three_identical(), quick(3), rng, &trace);
  EXPECT_EQ(max_regret_value(x0, three_identical()), Rational(1));
  EXPECT_FALSE(trace.phase1_fallback);
}

TEST(Phase1, DegenerateIntervals) {
  // Point intervals make the midpoint schedule optimal (Z = 0). The phase-1
  // relaxation is loose even here, so x0 itself can be worse; rounding never
  // makes it worse and the local search recovers the optimum.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng gen(seed);
    std::vector<Job> jobs;
    for (int j = 0; j < 6; ++j) {
      const auto p = gen.uniform_int(2, 9);
      jobs.push_back({j, p, p, gen.uniform_int(1, 20)});
    }
    const Instance inst(jobs, gen.uniform_int(10, 25));
    ASSERT_EQ(max_regret_value(midpoint_heuristic(inst), inst), Rational(0));
    SearchParams params = quick(seed);
    params.local_search_iterations = 1000;
    const TwoPhaseResult result = two_phase(inst, params);
    EXPECT_LE(result.trace.phase1_z, result.trace.phase1_decoded_z);
    EXPECT_EQ(result.max_regret, Rational(0)) << "seed " << seed;
  }
}

TEST(Phase1, FallbackWhenNoIncumbent) {
  const Instance inst = generate_instance({6, true, 2});
  SearchParams params = quick(0);
  params.phase1_node_limit = 0;
  params.rounding_iterations = 0;
  Rng rng(0);
  SearchTrace trace;
  const Schedule x0 = phase1(inst, params, rng, &trace);
  EXPECT_TRUE(trace.phase1_fallback);
  EXPECT_EQ(x0.perm(), midpoint_heuristic(inst).perm());
}

TEST(Phase2, ZeroIterationsReturnsInitial) {
  const Instance inst = generate_instance({5, true, 1});
  SearchParams params = quick(0);
  params.local_search_iterations = 0;
  Rng rng(0);
  const Schedule initial({4, 2, 0, 1, 3});
  EXPECT_EQ(phase2(initial, inst, params, rng).perm(), initial.perm());
}

TEST(Phase2, SingleJobReturnsInitial) {
  const Instance inst({{0, 1, 2, 1}}, 3);
  Rng rng(0);
  EXPECT_EQ(phase2(Schedule::identity(1), inst, quick(0), rng).size(), 1u);
  EXPECT_THROW(phase2(Schedule::identity(2), inst, quick(0), rng),
               std::invalid_argument);
}

TEST(Phase2, ThreeJobExampleStaysAtOne) {
  Rng rng(5);
  const Schedule best = phase2(Schedule({2, 0, 1}), three_identical(), quick(5), rng);
  EXPECT_EQ(max_regret_value(best, three_identical()), Rational(1));
}

TEST(Phase2, TwoJobExampleFindsZero) {
  const Instance inst = two_jobs();
  EXPECT_EQ(brute_force_max_regret(Schedule({1, 0}), inst).value, Rational(9));
  EXPECT_EQ(brute_force_max_regret(Schedule({0, 1}), inst).value, Rational(0));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    SearchTrace trace;
    const Schedule best = phase2(Schedule({1, 0}), inst, quick(seed), rng, &trace);
    EXPECT_EQ(best.perm(), (std::vector<int>{0, 1}));
    EXPECT_EQ(trace.evaluations, 1);
    EXPECT_EQ(trace.tabu_size, 2u);
    EXPECT_TRUE(trace.steps.front().accepted);
    EXPECT_EQ(trace.skipped_iterations, 59);
  }
}

TEST(Phase2, TraceInvariants) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Instance inst = generate_instance({5, seed % 2 == 1, seed + 40});
    const Schedule initial = midpoint_heuristic(inst);
    const Rational start = max_regret_value(initial, inst);
    SearchParams params = quick(seed);
    params.local_search_iterations = 200;
    Rng rng(seed);
    SearchTrace trace;
    const Schedule best = phase2(initial, inst, params, rng, &trace);
    ASSERT_EQ(trace.steps.size(), 200u);
    Rational running = start;
    Rational previous = start;
    for (const SearchStep& step : trace.steps) {
      if (step.candidate_z) running = std::min(running, *step.candidate_z);
      EXPECT_EQ(step.best_z, running);
      EXPECT_LE(step.best_z, previous);
      previous = step.best_z;
    }
    EXPECT_EQ(max_regret_value(best, inst), running);
    // 120 permutations of 5 jobs; none evaluated twice.
    EXPECT_EQ(trace.tabu_size, static_cast<std::size_t>(trace.evaluations) + 1);
    EXPECT_LE(trace.tabu_size, 120u);
    EXPECT_EQ(trace.evaluations + trace.skipped_iterations, 200);
  }
}

TEST(Phase2, AcceptanceRule) {
  const Instance inst = generate_instance({6, true, 77});
  const Schedule initial = midpoint_heuristic(inst);
  const Rational start = max_regret_value(initial, inst);
  auto run = [&](double alpha, bool below) {
    SearchParams params = quick(7);
    params.alpha = alpha;
    params.accept_worse_below_alpha = below;
    params.local_search_iterations = 150;
    Rng rng(7);
    SearchTrace trace;
    phase2(initial, inst, params, rng, &trace);
    return trace;
  };
  // As printed, alpha = 0 accepts every evaluated candidate.
  for (const SearchStep& step : run(0.0, false).steps) {
    if (step.candidate_z) EXPECT_TRUE(step.accepted);
  }
  // Both rules with the threshold at its extreme reject every worse move.
  for (const SearchTrace& trace : {run(1.0, false), run(0.0, true)}) {
    const std::vector<Rational> current = current_values(start, trace);
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      const SearchStep& step = trace.steps[i];
      if (step.candidate_z) {
        EXPECT_EQ(step.accepted, *step.candidate_z <= current[i]);
      }
    }
  }
}

TEST(Phase2, LiteralBestUpdateStillReturnsEvaluatedSchedule) {
  const Instance inst = generate_instance({6, true, 12});
  SearchParams params = quick(2);
  params.literal_best_update = true;
  Rng rng(2);
  SearchTrace trace;
  const Schedule initial = midpoint_heuristic(inst);
  const Schedule best = phase2(initial, inst, params, rng, &trace);
  const Rational z = max_regret_value(best, inst);
  bool seen = z == max_regret_value(initial, inst);
  for (const SearchStep& step : trace.steps) {
    seen = seen || (step.candidate_z && *step.candidate_z == z);
  }
  EXPECT_TRUE(seen);
  EXPECT_EQ(trace.steps.back().best_z, z);
}

TEST(TwoPhase, NeverWorseThanInitialization) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Instance inst = generate_instance({7, true, seed + 100});
    const TwoPhaseResult result = two_phase(inst, quick(seed));
    EXPECT_LE(result.max_regret, result.trace.phase1_z);
    EXPECT_EQ(result.max_regret, max_regret_value(result.schedule, inst));
    EXPECT_GE(result.max_regret, exhaustive_search(inst).max_regret);
  }
}

TEST(TwoPhase, Examples) {
  EXPECT_EQ(two_phase(three_identical(), quick(1)).max_regret, Rational(1));
  const TwoPhaseResult r = two_phase(two_jobs(), quick(1));
  EXPECT_EQ(r.max_regret, Rational(0));
  EXPECT_EQ(r.schedule.perm(), (std::vector<int>{0, 1}));
}

TEST(TwoPhase, DeterministicForSeed) {
  const Instance inst = generate_instance({7, true, 5});
  const TwoPhaseResult a = two_phase(inst, quick(42));
  const TwoPhaseResult b = two_phase(inst, quick(42));
  EXPECT_EQ(a.schedule.perm(), b.schedule.perm());
  std::ostringstream ta, tb;
  write_trace_csv(ta, a.trace);
  write_trace_csv(tb, b.trace);
  EXPECT_EQ(ta.str(), tb.str());
  EXPECT_EQ(a.trace.phase1_nodes, b.trace.phase1_nodes);
}

TEST(TraceCsv, Format) {
  SearchTrace trace;
  trace.steps.push_back({1, Rational(7, 2), true, Rational(3)});
  trace.steps.push_back({2, std::nullopt, false, Rational(3)});
  std::ostringstream out;
  write_trace_csv(out, trace);
  EXPECT_EQ(out.str(),
            "iteration,candidate_z,accepted,best_z\n1,7/2,1,3\n2,,0,3\n");
}

}  // namespace
}  // namespace mmr
