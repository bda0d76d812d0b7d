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


#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "mmr/milp.hpp"
#include "mmr/random.hpp"
#include "oracles.hpp"

namespace mmr::milp {
namespace {

TEST(SolveLp, SingleBoundedVariable) {
  MipModel m(Sense::kMaximize);
  m.add_variable("x", 0, 3, 1);
  const LpSolution s = solve_lp(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 3.0, 1e-9);
  EXPECT_NEAR(s.values[0], 3.0, 1e-9);
}

TEST(SolveLp, SharedCapacity) {
  MipModel m(Sense::kMaximize);
  const int x = m.add_variable("x", 0, 1, 1);
  const int y = m.add_variable("y", 0, 1, 1);
  m.add_constraint({{x, 1}, {y, 1}}, Relation::kLessEqual, 1);
  const LpSolution s = solve_lp(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 1.0, 1e-9);
}

TEST(SolveLp, Infeasible) {
  MipModel m;
  const int x = m.add_variable("x", 0, 10, 1);
  m.add_constraint({{x, 1}}, Relation::kGreaterEqual, 1);
  m.add_constraint({{x, 1}}, Relation::kLessEqual, 0);
  EXPECT_EQ(solve_lp(m).status, LpStatus::kInfeasible);
}

TEST(SolveLp, Unbounded) {
  MipModel m(Sense::kMaximize);
  const int x = m.add_variable("x", 0, kInfinity, 1);
  const int y = m.add_variable("y", 0, kInfinity, 0);
  m.add_constraint({{x, 1}, {y, -1}}, Relation::kLessEqual, 2);
  EXPECT_EQ(solve_lp(m).status, LpStatus::kUnbounded);
}

TEST(SolveLp, FreeAndNegativeRanges) {
  MipModel m;
  const int x = m.add_variable("x", -5, 5, 1);
  const int y = m.add_variable("y", -2, kInfinity, 1);
  m.add_constraint({{x, 1}, {y, 1}}, Relation::kGreaterEqual, -4);
  m.add_constraint({{x, 1}, {y, -1}}, Relation::kEqual, 1);
  const LpSolution s = solve_lp(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -3.0, 1e-9);
  EXPECT_NEAR(s.values[x], -1.0, 1e-9);
  EXPECT_NEAR(s.values[y], -2.0, 1e-9);
}

// Beale's cycling example for textbook pivoting rules.
TEST(SolveLp, DegenerateCyclingExample) {
  MipModel m;
  const int x1 = m.add_variable("x1", 0, kInfinity, -0.75);
  const int x2 = m.add_variable("x2", 0, kInfinity, 150);
  const int x3 = m.add_variable("x3", 0, kInfinity, -0.02);
  const int x4 = m.add_variable("x4", 0, kInfinity, 6);
  m.add_constraint({{x1, 0.25}, {x2, -60}, {x3, -0.04}, {x4, 9}},
                   Relation::kLessEqual, 0);
  m.add_constraint({{x1, 0.5}, {x2, -90}, {x3, -0.02}, {x4, 3}},
                   Relation::kLessEqual, 0);
  m.add_constraint({{x3, 1}}, Relation::kLessEqual, 1);
  const LpSolution s = solve_lp(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -0.05, 1e-9);
}

MipModel random_model(Rng& rng, int continuous, int binaries, int rows) {
  MipModel m(rng.bernoulli(0.5) ? Sense::kMaximize : Sense::kMinimize);
  for (int j = 0; j < continuous; ++j) {
    const double lo = static_cast<double>(rng.uniform_int(-3, 2));
    m.add_variable("c" + std::to_string(j), lo, lo + rng.uniform_int(1, 6),
                   static_cast<double>(rng.uniform_int(-5, 5)));
  }
  for (int j = 0; j < binaries; ++j) {
    m.add_binary("b" + std::to_string(j),
                 static_cast<double>(rng.uniform_int(-5, 5)));
  }
  const int cols = continuous + binaries;
  for (int i = 0; i < rows; ++i) {
    std::vector<Term> terms;
    for (int j = 0; j < cols; ++j) {
      if (rng.bernoulli(0.6)) {
        terms.push_back({j, static_cast<double>(rng.uniform_int(-4, 4))});
      }
    }
    const auto pick = rng.uniform_int(0, 5);
    const Relation rel = pick == 0   ? Relation::kEqual
                         : pick <= 3 ? Relation::kLessEqual
                                     : Relation::kGreaterEqual;
    m.add_constraint(std::move(terms), rel,
                     static_cast<double>(rng.uniform_int(-4, 6)));
  }
  return m;
}

TEST(SolveLp, MatchesVertexEnumeration) {
  Rng rng(11);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const MipModel m = random_model(rng, 2 + trial % 3, trial % 2, 1 + trial % 4);
    const double expected = oracle::vertex_lp_optimum(m);
    const LpSolution s = solve_lp(m);
    if (std::isnan(expected)) {
      EXPECT_EQ(s.status, LpStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(s.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(s.objective, expected, 1e-7) << "trial " << trial;
    EXPECT_LE(m.max_violation(s.values), 1e-7);
  }
  EXPECT_GT(feasible, 100);
}

TEST(SolveMip, KnapsackExample) {
  MipModel m(Sense::kMaximize);
  const int a = m.add_binary("a", 10);
  const int b = m.add_binary("b", 1);
  m.add_constraint({{a, 4}, {b, 1}}, Relation::kLessEqual, 4);
  const MipSolution s = solve_mip(m);
  ASSERT_EQ(s.status, MipStatus::kOptimal);
  EXPECT_NEAR(s.objective, 10.0, 1e-9);
  EXPECT_NEAR(s.values[a], 1.0, 1e-9);
  EXPECT_NEAR(s.values[b], 0.0, 1e-9);
  EXPECT_GE(s.best_bound, s.objective - 1e-9);
}

TEST(SolveMip, Contradiction) {
  MipModel m;
  const int x = m.add_binary("x");
  m.add_constraint({{x, 1}}, Relation::kGreaterEqual, 1);
  m.add_constraint({{x, 1}}, Relation::kLessEqual, 0);
  const MipSolution s = solve_mip(m);
  EXPECT_EQ(s.status, MipStatus::kInfeasible);
  EXPECT_FALSE(s.has_incumbent());
}

TEST(SolveMip, IntegralRelaxationNeedsOneNode) {
  // Assignment constraints are totally unimodular.
  MipModel m;
  const int n = 4;
  const double cost[n][n] = {{4, 1, 3, 2}, {2, 0, 5, 3}, {3, 2, 2, 1}, {1, 3, 4, 2}};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.add_binary("x", cost[i][j]);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<Term> row, col;
    for (int j = 0; j < n; ++j) {
      row.push_back({i * n + j, 1});
      col.push_back({j * n + i, 1});
    }
    m.add_constraint(row, Relation::kEqual, 1);
    m.add_constraint(col, Relation::kEqual, 1);
  }
  const MipSolution s = solve_mip(m);
  ASSERT_EQ(s.status, MipStatus::kOptimal);
  EXPECT_EQ(s.node_count, 1);
  EXPECT_NEAR(s.objective, 5.0, 1e-9);
}

TEST(SolveMip, MatchesBinaryEnumeration) {
  Rng rng(5);
  int feasible = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const MipModel m =
        random_model(rng, trial % 3, 3 + trial % 6, 2 + trial % 3);
    const double expected = oracle::enumerate_mip_optimum(m);
    const MipSolution s = solve_mip(m);
    if (std::isnan(expected)) {
      EXPECT_EQ(s.status, MipStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(s.status, MipStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(s.objective, expected, 1e-6) << "trial " << trial;
    EXPECT_LE(m.max_violation(s.values), kFeasibilityTolerance);
    EXPECT_LE(m.max_integrality_violation(s.values), kIntegralityTolerance);
    if (m.sense() == Sense::kMaximize) {
      EXPECT_GE(s.best_bound, s.objective - 1e-6);
    } else {
      EXPECT_LE(s.best_bound, s.objective + 1e-6);
    }
  }
  EXPECT_GT(feasible, 40);
}

TEST(SolveMip, LimitsReportStatus) {
  // A knapsack whose relaxation is fractional at the root.
  MipModel m(Sense::kMaximize);
  const double value[] = {12, 11, 9, 7, 6, 5, 3};
  const double size[] = {7, 6, 5, 4, 4, 3, 2};
  std::vector<Term> cap;
  for (int j = 0; j < 7; ++j) {
    m.add_binary("k" + std::to_string(j), value[j]);
    cap.push_back({j, size[j]});
  }
  m.add_constraint(cap, Relation::kLessEqual, 14);

  MipOptions one_node;
  one_node.node_limit = 1;
  const MipSolution a = solve_mip(m, one_node);
  EXPECT_TRUE(a.status == MipStatus::kNodeLimit ||
              a.status == MipStatus::kFeasible);
  EXPECT_EQ(a.node_count, 1);

  const MipSolution b = solve_mip(m, 0.0, 0.0);
  EXPECT_EQ(b.status, MipStatus::kTimeLimit);

  const MipSolution full = solve_mip(m);
  ASSERT_EQ(full.status, MipStatus::kOptimal);
  EXPECT_NEAR(full.objective, oracle::enumerate_mip_optimum(m), 1e-9);
}

TEST(SolveMip, RelativeGapStopsEarly) {
  MipModel m(Sense::kMaximize);
  std::vector<Term> cap;
  for (int j = 0; j < 12; ++j) {
    m.add_binary("k" + std::to_string(j), 10 + j % 5);
    cap.push_back({j, 3.0 + (j * 7) % 5});
  }
  m.add_constraint(cap, Relation::kLessEqual, 20);
  const MipSolution exact = solve_mip(m);
  const MipSolution loose = solve_mip(m, kInfinity, 0.5);
  ASSERT_EQ(exact.status, MipStatus::kOptimal);
  ASSERT_TRUE(loose.has_incumbent());
  EXPECT_LE(loose.node_count, exact.node_count);
  EXPECT_GE(loose.objective, 0.5 * exact.objective);
}

TEST(MipModel, Validation) {
  MipModel m;
  const int x = m.add_variable("x", 0, 1);
  EXPECT_THROW(m.add_variable("y", -kInfinity, 0), std::invalid_argument);
  EXPECT_THROW(m.set_bounds(x, 2, 1), std::invalid_argument);
  const int b = m.add_binary("b");
  EXPECT_THROW(m.set_bounds(b, 0, 2), std::invalid_argument);
  EXPECT_THROW(m.add_constraint({{7, 1.0}}, Relation::kLessEqual, 1),
               std::invalid_argument);
  EXPECT_THROW(m.add_constraint({{x, std::nan("")}}, Relation::kLessEqual, 1),
               std::invalid_argument);
  EXPECT_EQ(m.num_binaries(), 1);
}

TEST(MipModel, ViolationMeasures) {
  MipModel m;
  const int x = m.add_variable("x", 0, 2);
  const int b = m.add_binary("b");
  m.add_constraint({{x, 1}, {b, 1}}, Relation::kLessEqual, 2);
  const std::vector<double> v{2.0, 0.75};
  EXPECT_NEAR(m.max_violation(v), 0.75, 1e-12);
  EXPECT_NEAR(m.max_integrality_violation(v), 0.25, 1e-12);
}

TEST(LpFormat, Layout) {
  MipModel m(Sense::kMaximize);
  const int x = m.add_variable("x", 0, 4, 3);
  const int y = m.add_variable("y", 1, kInfinity, -1);
  const int b = m.add_binary("b", 2);
  const int f = m.add_binary("f");
  m.set_bounds(f, 1, 1);
  m.add_constraint({{x, 1}, {y, -2}, {b, 1}}, Relation::kLessEqual, 5, "cap");
  m.add_constraint({{y, 1}, {f, 1}}, Relation::kGreaterEqual, 1);
  std::ostringstream out;
  write_lp_format(out, m);
  EXPECT_EQ(out.str(),
            "\\ 4 variables, 2 constraints\n"
            "Maximize\n"
            " obj: + 3 x - 1 y + 2 b\n"
            "Subject To\n"
            " cap: + 1 x - 2 y + 1 b <= 5\n"
            " c1: + 1 y + 1 f >= 1\n"
            "Bounds\n"
            " 0 <= x <= 4\n"
            " 1 <= y <= +inf\n"
            " f = 1\n"
            "Binaries\n"
            " b\n"
            " f\n"
            "End\n");
}

}  // namespace
}  // namespace mmr::milp
