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

#ifndef MMR_HARNESS_HPP_
#define MMR_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmr/core.hpp"
#include "mmr/search.hpp"

namespace mmr {

struct GenSpec {
  std::size_t n = 10;
  bool weighted = false;
  std::uint64_t seed = 0;
};

/// Random instance: d ~ U{5n..10n}, then per job p_min ~ U{5..10},
/// p_max = p_min + U{0..20} and, when weighted, w ~ U{1..100} (else 1).
/// Draws are taken in exactly that order from Rng(seed).
Instance generate_instance(const GenSpec& spec);

inline constexpr std::size_t kExhaustiveMaxJobs = 10;

struct ExhaustiveResult {
  Schedule schedule;  // first minimizer in lexicographic order
  Rational max_regret;
};

/// Exact Z for all n! schedules. Throws above kExhaustiveMaxJobs jobs.
ExhaustiveResult exhaustive_search(const Instance& instance);

struct BenchConfig {
  std::vector<std::size_t> sizes{10, 15};
  int instances_per_n = 10;
  bool weighted = false;
  SearchParams params;  // rng_seed is replaced per instance
  std::uint64_t seed = 0;
  int threads = 1;
};

struct BenchRow {
  std::size_t n = 0;
  int instance = 0;
  std::uint64_t instance_seed = 0;
  bool weighted = false;
  Rational midpoint_z;
  Rational twophase_z;
  Rational phase1_z;
  std::string phase1_status;
  std::int64_t phase1_nodes = 0;
  bool phase1_fallback = false;
  Schedule midpoint_schedule;
  Schedule twophase_schedule;
  double midpoint_seconds = 0.0;
  double phase1_seconds = 0.0;
  double phase2_seconds = 0.0;
  double twophase_seconds = 0.0;
};

struct MethodStats {
  double mean_z = 0.0;
  double std_z = 0.0;  // population standard deviation
  double min_time = 0.0;
  double mean_time = 0.0;
  double max_time = 0.0;
};

struct BenchAggregate {
  std::size_t n = 0;
  int instances = 0;
  MethodStats midpoint;
  MethodStats twophase;
  int twophase_not_worse = 0;  // instances with twophase_z <= midpoint_z
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchAggregate> aggregates;
};

/// Seeds: instance i of size n uses derive_seed(derive_seed(seed, n), i);
/// its search uses derive_seed(instance_seed, 1).
std::uint64_t bench_instance_seed(std::uint64_t seed, std::size_t n, int index);

/// Runs the midpoint heuristic and the two-phase method on every generated
/// instance. Sizes above 30 are rejected; above 15 a warning is logged.
BenchReport run_benchmark(const BenchConfig& config);

/// Groups rows by n (in first-appearance order) and recomputes statistics.
std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows);

/// Per-instance results without timings; identical for identical seeds.
void write_rows_csv(std::ostream& out, const BenchReport& report);
/// Per-instance wall times in seconds, millisecond resolution.
void write_times_csv(std::ostream& out, const BenchReport& report);
/// One line per (n, method), shaped like the published tables.
void write_summary_csv(std::ostream& out, const BenchReport& report);

/// Thread count from the MMR_THREADS environment variable, default 1.
int default_thread_count();

}  // namespace mmr

#endif  // MMR_HARNESS_HPP_
