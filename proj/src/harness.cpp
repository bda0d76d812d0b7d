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

#include "mmr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "mmr/deterministic.hpp"
#include "mmr/exact_regret.hpp"
#include "mmr/random.hpp"

namespace mmr {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string schedule_field(const Schedule& schedule) {
  std::string out;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(schedule[k] + 1);
  }
  return out;
}

MethodStats stats(const std::vector<double>& z, const std::vector<double>& t) {
  MethodStats s;
  const double count = static_cast<double>(z.size());
  s.mean_z = std::accumulate(z.begin(), z.end(), 0.0) / count;
  double sq = 0.0;
  for (double v : z) sq += (v - s.mean_z) * (v - s.mean_z);
  s.std_z = std::sqrt(sq / count);
  s.min_time = *std::min_element(t.begin(), t.end());
  s.max_time = *std::max_element(t.begin(), t.end());
  s.mean_time = std::accumulate(t.begin(), t.end(), 0.0) / count;
  return s;
}

BenchRow run_one(const BenchConfig& config, std::size_t n, int index) {
  BenchRow row;
  row.n = n;
  row.instance = index;
  row.weighted = config.weighted;
  row.instance_seed = bench_instance_seed(config.seed, n, index);
  const Instance instance =
      generate_instance({n, config.weighted, row.instance_seed});

  auto start = std::chrono::steady_clock::now();
  row.midpoint_schedule = midpoint_heuristic(instance);
  row.midpoint_seconds = seconds_since(start);
  row.midpoint_z = max_regret_value(row.midpoint_schedule, instance);

  SearchParams params = config.params;
  params.rng_seed = derive_seed(row.instance_seed, 1);
  start = std::chrono::steady_clock::now();
  TwoPhaseResult result = two_phase(instance, params);
  row.twophase_seconds = seconds_since(start);
  row.twophase_schedule = result.schedule;
  row.twophase_z = result.max_regret;
  row.phase1_z = result.trace.phase1_z;
  row.phase1_status = milp::to_string(result.trace.phase1_status);
  row.phase1_nodes = result.trace.phase1_nodes;
  row.phase1_fallback = result.trace.phase1_fallback;
  row.phase1_seconds = result.trace.phase1_seconds;
  row.phase2_seconds = result.trace.phase2_seconds;
  return row;
}

}  // namespace

Instance generate_instance(const GenSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("need at least one job");
  Rng rng(spec.seed);
  const auto n = static_cast<std::int64_t>(spec.n);
  const Rational due_date(rng.uniform_int(5 * n, 10 * n));
  std::vector<Job> jobs;
  for (std::int64_t j = 0; j < n; ++j) {
    Job job;
    job.id = static_cast<int>(j);
    job.p_min = Rational(rng.uniform_int(5, 10));
    job.p_max = job.p_min + rng.uniform_int(0, 20);
    job.weight = spec.weighted ? Rational(rng.uniform_int(1, 100)) : Rational(1);
    jobs.push_back(job);
  }
  return Instance(std::move(jobs), due_date);
}

ExhaustiveResult exhaustive_search(const Instance& instance) {
  if (instance.size() > kExhaustiveMaxJobs) {
    throw std::invalid_argument("exhaustive search limited to " +
                                std::to_string(kExhaustiveMaxJobs) + " jobs");
  }
  std::vector<int> perm = Schedule::identity(instance.size()).perm();
  ExhaustiveResult best{Schedule(perm), max_regret_value(Schedule(perm), instance)};
  while (std::next_permutation(perm.begin(), perm.end())) {
    if (best.max_regret == 0) break;
    Schedule candidate(perm);
    const Rational z = max_regret_value(candidate, instance);
    if (z < best.max_regret) best = {std::move(candidate), z};
  }
  return best;
}

std::uint64_t bench_instance_seed(std::uint64_t seed, std::size_t n,
                                  int index) {
  return derive_seed(derive_seed(seed, n), static_cast<std::uint64_t>(index));
}

BenchReport run_benchmark(const BenchConfig& config) {
  config.params.validate();
  if (config.instances_per_n < 1) {
    throw std::invalid_argument("need at least one instance per size");
  }
  std::vector<std::pair<std::size_t, int>> jobs;
  for (std::size_t n : config.sizes) {
    if (n < 1 || n > 30) {
      throw std::invalid_argument("benchmark sizes must lie in 1..30");
    }
    if (n > 15) {
      std::clog << "warning: n = " << n
                << " is slow with exact regret evaluation\n";
    }
    for (int i = 0; i < config.instances_per_n; ++i) jobs.emplace_back(n, i);
  }

  BenchReport report;
  report.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      report.rows[k] = run_one(config, jobs[k].first, jobs[k].second);
    }
  };
  const int threads =
      std::clamp<int>(config.threads, 1, static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  report.aggregates = aggregate(report.rows);
  return report;
}

std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows) {
  std::vector<std::size_t> sizes;
  for (const BenchRow& row : rows) {
    if (std::find(sizes.begin(), sizes.end(), row.n) == sizes.end()) {
      sizes.push_back(row.n);
    }
  }
  std::vector<BenchAggregate> out;
  for (std::size_t n : sizes) {
    std::vector<double> mid_z, mid_t, two_z, two_t;
    BenchAggregate agg;
    agg.n = n;
    for (const BenchRow& row : rows) {
      if (row.n != n) continue;
      ++agg.instances;
      mid_z.push_back(to_double(row.midpoint_z));
      mid_t.push_back(row.midpoint_seconds);
      two_z.push_back(to_double(row.twophase_z));
      two_t.push_back(row.twophase_seconds);
      if (row.twophase_z <= row.midpoint_z) ++agg.twophase_not_worse;
    }
    agg.midpoint = stats(mid_z, mid_t);
    agg.twophase = stats(two_z, two_t);
    out.push_back(agg);
  }
  return out;
}

void write_rows_csv(std::ostream& out, const BenchReport& report) {
  out << "n,instance,instance_seed,weighted,midpoint_z,twophase_z,phase1_z,"
         "phase1_status,phase1_nodes,phase1_fallback,midpoint_schedule,"
         "twophase_schedule\n";
  for (const BenchRow& row : report.rows) {
    out << row.n << ',' << row.instance << ',' << row.instance_seed << ','
        << (row.weighted ? 1 : 0) << ',' << to_string(row.midpoint_z) << ','
        << to_string(row.twophase_z) << ',' << to_string(row.phase1_z) << ','
        << row.phase1_status << ',' << row.phase1_nodes << ','
        << (row.phase1_fallback ? 1 : 0) << ','
        << schedule_field(row.midpoint_schedule) << ','
        << schedule_field(row.twophase_schedule) << '\n';
  }
}

void write_times_csv(std::ostream& out, const BenchReport& report) {
  out << "n,instance,midpoint_seconds,phase1_seconds,phase2_seconds,"
         "twophase_seconds\n";
  for (const BenchRow& row : report.rows) {
    out << row.n << ',' << row.instance << ',' << fixed(row.midpoint_seconds, 3)
        << ',' << fixed(row.phase1_seconds, 3) << ','
        << fixed(row.phase2_seconds, 3) << ','
        << fixed(row.twophase_seconds, 3) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const BenchReport& report) {
  out << "n,method,instances,mean_z,std_z,min_time,mean_time,max_time\n";
  for (const BenchAggregate& agg : report.aggregates) {
    const std::pair<const char*, const MethodStats*> methods[] = {
        {"midpoint", &agg.midpoint}, {"twophase", &agg.twophase}};
    for (const auto& [name, s] : methods) {
      out << agg.n << ',' << name << ',' << agg.instances << ','
          << fixed(s->mean_z, 2) << ',' << fixed(s->std_z, 2) << ','
          << fixed(s->min_time, 3) << ',' << fixed(s->mean_time, 3) << ','
          << fixed(s->max_time, 3) << '\n';
    }
  }
}

int default_thread_count() {
  if (const char* env = std::getenv("MMR_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace mmr
