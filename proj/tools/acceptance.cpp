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


// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "mmr/core.hpp"
#include "mmr/deterministic.hpp"
#include "mmr/exact_regret.hpp"
#include "mmr/harness.hpp"
#include "mmr/models.hpp"
#include "mmr/random.hpp"
#include "mmr/search.hpp"

namespace {

using mmr::Rational;

// Tolerances and budgets.
constexpr double kMipTolerance = 1e-6;       // MIP objective vs exact value
constexpr double kDualityTolerance = 1e-6;   // fixed-x dual vs primal LP
constexpr double kExampleSeconds = 1.0;      // criterion 1
constexpr double kOracleSeconds = 300.0;     // criterion 2 (target)
constexpr double kBenchmarkSeconds = 1800.0; // criterion 5
constexpr int kDominanceMinimum = 8;         // of 10 instances
constexpr double kExactShareMinimum = 0.5;   // criterion 6

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string num(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1e", v);
  return buf;
}

mmr::Schedule random_schedule(std::size_t n, mmr::Rng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t k = n; k > 1; --k) {
    std::swap(perm[k - 1], perm[rng.uniform_int(0, static_cast<std::int64_t>(k) - 1)]);
  }
  return mmr::Schedule(std::move(perm));
}

// Solves the regret MIP and checks the objective against an exact value.
bool mip_agrees(const mmr::Schedule& s, const mmr::Instance& inst,
                const Rational& exact) {
  const auto mip = mmr::build_regret_mip(s, inst);
  const auto sol = mmr::milp::solve_mip(mip.model);
  return sol.status == mmr::milp::MipStatus::kOptimal &&
         std::abs(sol.objective - mmr::to_double(exact)) <= kMipTolerance;
}

Outcome three_job_example() {
  const auto start = std::chrono::steady_clock::now();
  const mmr::Instance inst({{0, 1, 3, 1}, {1, 1, 3, 1}, {2, 1, 3, 1}}, 5);
  std::vector<int> perm{0, 1, 2};
  Outcome out;
  int checked = 0;
  do {
    const mmr::Schedule s(perm);
    const bool ok = mmr::max_regret(s, inst).value == 1 &&
                    mmr::brute_force_max_regret(s, inst).value == 1 &&
                    mip_agrees(s, inst, Rational(1));
    out.pass = out.pass && ok;
    ++checked;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double t = seconds_since(start);
  out.pass = out.pass && checked == 6 && t < kExampleSeconds;
  out.detail = std::to_string(checked) + " permutations, Z = 1 by all evaluators, " +
               num(t) + " s";
  return out;
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  int agree = 0;
  const int total = 200;
  for (int i = 0; i < total; ++i) {
    const std::size_t n = 3 + i % 7;
    const auto inst = mmr::generate_instance(
        {n, i % 2 == 0, mmr::derive_seed(2, static_cast<std::uint64_t>(i))});
    mmr::Rng rng(mmr::derive_seed(3, static_cast<std::uint64_t>(i)));
    const auto s = random_schedule(n, rng);
    const Rational z = mmr::max_regret(s, inst).value;
    if (z == mmr::brute_force_max_regret(s, inst).value && mip_agrees(s, inst, z)) {
      ++agree;
    } else {
      std::cerr << "criterion 2 mismatch on instance " << i << '\n';
    }
  }
  const double t = seconds_since(start);
  Outcome out;
  out.pass = agree == total;
  out.detail = std::to_string(agree) + "/" + std::to_string(total) +
               " instances agree, " + num(t, 1) + " s";
  if (t > kOracleSeconds) out.detail += " (over the " + num(kOracleSeconds, 0) + " s target)";
  return out;
}

Outcome duality_check() {
  int ok = 0;
  const int total = 50;
  double worst_gap = 0.0;
  for (int i = 0; i < total; ++i) {
    const std::size_t n = 2 + i % 5;
    const auto inst = mmr::generate_instance(
        {n, i % 2 == 1, mmr::derive_seed(4, static_cast<std::uint64_t>(i))});
    mmr::Rng rng(mmr::derive_seed(5, static_cast<std::uint64_t>(i)));
    const auto s = random_schedule(n, rng);
    auto phase1 = mmr::build_phase1_mip(inst);
    mmr::fix_assignment(phase1, s);
    const auto dual = mmr::milp::solve_lp(phase1.model);
    const auto primal = mmr::milp::solve_lp(mmr::build_regret_mip(s, inst).model);
    if (dual.status != mmr::milp::LpStatus::kOptimal ||
        primal.status != mmr::milp::LpStatus::kOptimal) {
      continue;
    }
    const double gap = std::abs(dual.objective - primal.objective);
    worst_gap = std::max(worst_gap, gap);
    const double z = mmr::to_double(mmr::max_regret_value(s, inst));
    if (gap <= kDualityTolerance && primal.objective >= z - kDualityTolerance &&
        dual.objective >= z - kDualityTolerance) {
      ++ok;
    }
  }
  Outcome out;
  out.pass = ok == total;
  out.detail = std::to_string(ok) + "/" + std::to_string(total) +
               " schedules, max |dual - primal| = " + sci(worst_gap);
  return out;
}

// Subset enumeration of the on-time set, independent of the knapsack code.
Rational enumerate_best(const mmr::Scenario& p, const mmr::Instance& inst) {
  const std::size_t n = inst.size();
  Rational total(0), best(0);
  for (const auto& job : inst.jobs()) total += job.weight;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Rational load(0), w(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> j & 1u) {
        load += p.p[j];
        w += inst.job(j).weight;
      }
    }
    if (load <= inst.due_date() && w > best) best = w;
  }
  return total - best;
}

Outcome best_response_check() {
  int ok = 0, greedy_ok = 0, greedy_total = 0;
  const int total = 200;
  for (int i = 0; i < total; ++i) {
    const std::size_t n = 1 + i % 12;
    const bool weighted = i % 3 != 0;
    const auto inst = mmr::generate_instance(
        {n, weighted, mmr::derive_seed(6, static_cast<std::uint64_t>(i))});
    mmr::Rng rng(mmr::derive_seed(7, static_cast<std::uint64_t>(i)));
    mmr::Scenario p;
    for (const auto& job : inst.jobs()) {
      const auto lo = job.p_min.numerator(), hi = job.p_max.numerator();
      p.p.push_back(Rational(rng.uniform_int(lo, hi)));
    }
    const Rational expected = enumerate_best(p, inst);
    if (mmr::best_response(p, inst).opt_value == expected) ++ok;
    if (!weighted) {
      ++greedy_total;
      if (mmr::unweighted_best_response(p, inst).opt_value == expected) ++greedy_ok;
    }
  }
  Outcome out;
  out.pass = ok == total && greedy_ok == greedy_total;
  out.detail = "knapsack " + std::to_string(ok) + "/" + std::to_string(total) +
               ", greedy " + std::to_string(greedy_ok) + "/" +
               std::to_string(greedy_total);
  return out;
}

mmr::BenchReport dominance_report;

Outcome method_dominance() {
  const auto start = std::chrono::steady_clock::now();
  mmr::BenchConfig config;
  config.sizes = {10};
  config.instances_per_n = 10;
  config.weighted = true;
  config.seed = 1;
  config.threads = mmr::default_thread_count();
  dominance_report = mmr::run_benchmark(config);
  const double t = seconds_since(start);
  const auto& agg = dominance_report.aggregates.at(0);
  Outcome out;
  out.pass = agg.twophase.mean_z <= agg.midpoint.mean_z &&
             agg.twophase_not_worse >= kDominanceMinimum && t <= kBenchmarkSeconds;
  out.detail = "mean Z two-phase " + num(agg.twophase.mean_z, 2) + " vs midpoint " +
               num(agg.midpoint.mean_z, 2) + ", not worse on " +
               std::to_string(agg.twophase_not_worse) + "/10, " + num(t, 1) + " s";
  return out;
}

Outcome heuristic_sanity() {
  int init_ok = 0;
  for (const auto& row : dominance_report.rows) {
    if (row.twophase_z <= row.phase1_z) ++init_ok;
  }
  int bound_ok = 0, exact = 0;
  const int total = 20;
  for (int i = 0; i < total; ++i) {
    const auto inst = mmr::generate_instance(
        {6, false, mmr::derive_seed(8, static_cast<std::uint64_t>(i))});
    mmr::SearchParams params;
    params.rng_seed = mmr::derive_seed(9, static_cast<std::uint64_t>(i));
    const Rational z = mmr::two_phase(inst, params).max_regret;
    const Rational best = mmr::exhaustive_search(inst).max_regret;
    if (z >= best) ++bound_ok;
    if (z == best) ++exact;
  }
  Outcome out;
  const std::size_t rows = dominance_report.rows.size();
  out.pass = rows == 10 && init_ok == static_cast<int>(rows) && bound_ok == total &&
             exact >= kExactShareMinimum * total;
  out.detail = "not worse than initialization " + std::to_string(init_ok) + "/" +
               std::to_string(rows) + ", exhaustive reached on " +
               std::to_string(exact) + "/" + std::to_string(total);
  return out;
}

Outcome trivial_regret() {
  int slack_ok = 0, point_ok = 0;
  const int total = 40;
  for (int i = 0; i < total; ++i) {
    mmr::Rng rng(mmr::derive_seed(10, static_cast<std::uint64_t>(i)));
    const std::size_t n = 1 + i % 8;
    std::vector<mmr::Job> loose, point;
    std::int64_t sum_max = 0, sum_point = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto lo = rng.uniform_int(1, 10);
      const auto hi = lo + rng.uniform_int(0, 10);
      const auto w = rng.uniform_int(1, 50);
      loose.push_back({static_cast<int>(j), Rational(lo), Rational(hi), Rational(w)});
      point.push_back({static_cast<int>(j), Rational(lo), Rational(lo), Rational(w)});
      sum_max += hi;
      sum_point += lo;
    }
    // Due date at or above the total of the upper bounds: nobody is ever late.
    const mmr::Instance slack(loose, Rational(sum_max + rng.uniform_int(0, 3)));
    if (mmr::max_regret_value(random_schedule(n, rng), slack) == 0) ++slack_ok;
    // Point intervals: the midpoint schedule is a deterministic optimum.
    const mmr::Instance fixed(point, Rational(rng.uniform_int(1, sum_point)));
    if (mmr::max_regret_value(mmr::midpoint_heuristic(fixed), fixed) == 0) ++point_ok;
  }
  Outcome out;
  out.pass = slack_ok == total && point_ok == total;
  out.detail = "d >= sum p_max: " + std::to_string(slack_ok) + "/" +
               std::to_string(total) + ", point intervals: " +
               std::to_string(point_ok) + "/" + std::to_string(total);
  return out;
}

Outcome determinism() {
  mmr::BenchConfig config;
  config.sizes = {6, 8};
  config.instances_per_n = 3;
  config.weighted = true;
  config.seed = 11;
  config.threads = mmr::default_thread_count();
  std::ostringstream first, second;
  mmr::write_rows_csv(first, mmr::run_benchmark(config));
  mmr::write_rows_csv(second, mmr::run_benchmark(config));
  Outcome out;
  out.pass = first.str() == second.str();
  out.detail = std::to_string(first.str().size()) + " bytes, " +
               (out.pass ? "identical" : "different");
  return out;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"three-job example regression", three_job_example},
      {"oracle equivalence", oracle_equivalence},
      {"duality self-check", duality_check},
      {"best-response optimality", best_response_check},
      {"method dominance", method_dominance},
      {"heuristic sanity", heuristic_sanity},
      {"trivial-regret laws", trivial_regret},
      {"determinism", determinism},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  " << index++ << ". "
              << name << ": " << outcome.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
