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


#include <gtest/gtest.h>

#include "mmr/exact_regret.hpp"
#include "mmr/harness.hpp"
#include "mmr/random.hpp"
#include "oracles.hpp"

namespace mmr {
namespace {

Instance three_identical() {
  return Instance({{0, 1, 3, 1}, {1, 1, 3, 1}, {2, 1, 3, 1}}, 5);
}

Instance two_jobs() { return Instance({{0, 2, 4, 10}, {1, 1, 1, 1}}, 4); }

Schedule shuffled(std::size_t n, Rng& rng) {
  std::vector<int> perm = Schedule::identity(n).perm();
  for (std::size_t k = n; k > 1; --k) {
    std::swap(perm[k - 1], perm[rng.uniform_int(0, k - 1)]);
  }
  return Schedule(perm);
}

// Narrow intervals keep the scenario grid small.
Instance small_instance(std::size_t n, bool weighted, Rng& rng) {
  std::vector<Job> jobs;
  for (std::size_t j = 0; j < n; ++j) {
    const auto lo = rng.uniform_int(1, 6);
    jobs.push_back({static_cast<int>(j), lo, lo + rng.uniform_int(0, 3),
                    weighted ? rng.uniform_int(1, 9) : 1});
  }
  return Instance(std::move(jobs), rng.uniform_int(2, 4 * n));
}

void expect_certificate(const RegretCertificate& c, const Schedule& s,
                        const Instance& inst) {
  EXPECT_TRUE(c.worst_scenario.within(inst));
  Rational on_sum;
  for (int j : c.adversary_ontime) on_sum += c.worst_scenario.p[j];
  EXPECT_LE(on_sum, inst.due_date());
  const BestResponse adversary = best_response(c.worst_scenario, inst);
  EXPECT_EQ(adversary.opt_value, c.adversary.opt_value);
  const Rational realized =
      evaluate(s, c.worst_scenario, inst).objective - adversary.opt_value;
  if (inst.is_integral() && inst.epsilon() == 1) {
    EXPECT_EQ(realized, c.value);
    for (const Rational& p : c.worst_scenario.p) EXPECT_TRUE(is_integer(p));
  } else {
    EXPECT_GE(realized, c.value);
  }
}

TEST(MaxRegret, ThreeJobExampleAllPermutations) {
  const Instance inst = three_identical();
  for (const auto& perm : oracle::all_permutations(3)) {
    const Schedule s(perm);
    const RegretCertificate c = max_regret(s, inst);
    EXPECT_EQ(c.value, Rational(1));
    EXPECT_EQ(brute_force_max_regret(s, inst).value, Rational(1));
    EXPECT_EQ(max_regret_value(s, inst), Rational(1));
    EXPECT_EQ(oracle::grid_max_regret(s, inst), Rational(1));
    expect_certificate(c, s, inst);
  }
}

TEST(MaxRegret, TwoJobExample) {
  const Instance inst = two_jobs();
  EXPECT_EQ(max_regret(Schedule({1, 0}), inst).value, Rational(9));
  EXPECT_EQ(max_regret(Schedule({0, 1}), inst).value, Rational(0));
  EXPECT_EQ(brute_force_max_regret(Schedule({1, 0}), inst).value, Rational(9));
  EXPECT_EQ(brute_force_max_regret(Schedule({0, 1}), inst).value, Rational(0));
  expect_certificate(max_regret(Schedule({1, 0}), inst), Schedule({1, 0}), inst);
}

TEST(MaxRegret, DegenerateIntervals) {
  const Instance inst({{0, 4, 4, 3}, {1, 2, 2, 1}, {2, 3, 3, 5}}, 6);
  const Scenario p = lower_scenario(inst);
  const Rational opt = best_response(p, inst).opt_value;
  for (const auto& perm : oracle::all_permutations(3)) {
    const Schedule s(perm);
    EXPECT_EQ(max_regret(s, inst).value, evaluate(s, p, inst).objective - opt);
  }
}

TEST(MaxRegret, MatchesScenarioGrid) {
  Rng rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const Instance inst = small_instance(2 + trial % 4, trial % 2 == 0, rng);
    const Schedule s = shuffled(inst.size(), rng);
    const RegretCertificate c = max_regret(s, inst);
    EXPECT_EQ(c.value, oracle::grid_max_regret(s, inst)) << "trial " << trial;
    expect_certificate(c, s, inst);
  }
}

TEST(MaxRegret, MatchesBruteForce) {
  for (int seed = 0; seed < 150; ++seed) {
    const std::size_t n = 3 + seed % 8;
    const Instance inst = generate_instance({n, seed % 3 != 0, std::uint64_t(seed)});
    Rng rng(derive_seed(seed, 3));
    const Schedule s = shuffled(n, rng);
    const RegretCertificate c = max_regret(s, inst);
    EXPECT_EQ(c.value, brute_force_max_regret(s, inst).value) << "seed " << seed;
    EXPECT_EQ(c.value, max_regret_value(s, inst));
    EXPECT_LE(c.value, inst.total_weight());
    expect_certificate(c, s, inst);
  }
}

TEST(MaxRegret, FractionalData) {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Job> jobs;
    for (int j = 0; j < 5; ++j) {
      const Rational lo(rng.uniform_int(2, 12), 2);
      jobs.push_back({j, lo, lo + Rational(rng.uniform_int(0, 9), 3),
                      rng.uniform_int(1, 5)});
    }
    const Instance inst(std::move(jobs), Rational(rng.uniform_int(10, 40), 3),
                        Rational(1, 6));
    const Schedule s = shuffled(5, rng);
    const RegretCertificate c = max_regret(s, inst);
    EXPECT_EQ(c.value, brute_force_max_regret(s, inst).value);
    expect_certificate(c, s, inst);
  }
}

TEST(MaxRegret, ZeroWhenEverythingFits) {
  for (int seed = 0; seed < 30; ++seed) {
    const Instance gen = generate_instance({7, true, std::uint64_t(seed)});
    const Instance inst(gen.jobs(), gen.total_p_max() + seed % 3);
    Rng rng(seed);
    EXPECT_EQ(max_regret(shuffled(7, rng), inst).value, Rational(0));
  }
}

TEST(MaxRegret, ZeroWhenNothingFits) {
  const Instance inst({{0, 6, 9, 3}, {1, 7, 8, 1}, {2, 10, 12, 4}}, 5);
  for (const auto& perm : oracle::all_permutations(3)) {
    EXPECT_EQ(max_regret(Schedule(perm), inst).value, Rational(0));
  }
}

TEST(FeasibleInterval, ThreeJobExample) {
  const Instance inst = three_identical();
  const Schedule s = Schedule::identity(3);
  const auto sigma = feasible_interval(2, {1, 2}, s, inst);
  ASSERT_TRUE(sigma.has_value());
  EXPECT_EQ(*sigma, Rational(3));
  const Scenario p = scenario_from_certificate(2, {1, 2}, *sigma, s, inst);
  EXPECT_EQ(p.p, (std::vector<Rational>{3, 3, 1}));
}

TEST(FeasibleInterval, EmptySetWithoutBoundary) {
  const Instance inst = three_identical();
  const auto sigma = feasible_interval(4, {}, Schedule::identity(3), inst);
  ASSERT_TRUE(sigma.has_value());
  EXPECT_EQ(*sigma, Rational(0));
}

TEST(FeasibleInterval, UnreachableBoundary) {
  // The first two jobs can reach at most 5 = d.
  const Instance inst({{0, 1, 2, 1}, {1, 1, 3, 1}, {2, 1, 3, 1}}, 5);
  const Schedule s = Schedule::identity(3);
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    std::vector<int> t;
    for (int j = 0; j < 3; ++j) {
      if (mask >> j & 1u) t.push_back(j);
    }
    EXPECT_FALSE(feasible_interval(1, t, s, inst).has_value());
    EXPECT_FALSE(feasible_interval(2, t, s, inst).has_value());
  }
}

TEST(FeasibleInterval, FirstJobAloneLate) {
  const Instance inst({{0, 2, 7, 1}, {1, 1, 3, 1}, {2, 1, 3, 1}}, 5);
  const Schedule s = Schedule::identity(3);
  const auto sigma = feasible_interval(1, {}, s, inst);
  ASSERT_TRUE(sigma.has_value());
  const Scenario p = scenario_from_certificate(1, {}, *sigma, s, inst);
  EXPECT_EQ(p.p, (std::vector<Rational>{7, 1, 1}));
}

TEST(ScenarioFromCertificate, RejectsInconsistentInput) {
  const Instance inst = three_identical();
  const Schedule s = Schedule::identity(3);
  EXPECT_THROW(scenario_from_certificate(2, {1, 2}, Rational(1), s, inst),
               std::logic_error);
  EXPECT_THROW(scenario_from_certificate(2, {1, 2}, Rational(4), s, inst),
               std::logic_error);
  EXPECT_THROW(feasible_interval(0, {}, s, inst), std::invalid_argument);
}

TEST(BruteForce, SizeGuard) {
  const Instance inst = generate_instance({16, false, 1});
  EXPECT_THROW(brute_force_max_regret(Schedule::identity(16), inst),
               std::invalid_argument);
}

}  // namespace
}  // namespace mmr
