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

// Command-line front end: gen, eval, solve, bench, oracle.
//
// Exit codes: 0 success, 1 input error, 2 internal inconsistency.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mmr/core.hpp"
#include "mmr/deterministic.hpp"
#include "mmr/exact_regret.hpp"
#include "mmr/harness.hpp"
#include "mmr/milp.hpp"
#include "mmr/models.hpp"
#include "mmr/search.hpp"

namespace {

constexpr int kInputError = 1;
constexpr int kInconsistent = 2;

struct Inconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstanceArgs {
  std::string path;
  std::string epsilon;

  mmr::Instance load() const {
    std::optional<mmr::Rational> eps;
    if (!epsilon.empty()) eps = mmr::parse_rational(epsilon);
    return mmr::load_instance(path, eps);
  }
};

void add_instance_options(CLI::App* cmd, InstanceArgs& args) {
  cmd->add_option("-i,--instance", args.path, "Instance file")->required();
  cmd->add_option("--epsilon", args.epsilon,
                  "Lateness offset (default 1 for integer data)");
}

void add_search_options(CLI::App* cmd, mmr::SearchParams& p) {
  cmd->add_option("-M,--rounding-iterations", p.rounding_iterations,
                  "Randomized rounding iterations")
      ->capture_default_str();
  cmd->add_option("-N,--local-search-iterations", p.local_search_iterations,
                  "Swap local-search iterations")
      ->capture_default_str();
  cmd->add_option("--alpha", p.alpha, "Worse-move acceptance parameter")
      ->capture_default_str();
  cmd->add_option("--phase1-time", p.phase1_time_limit,
                  "Phase-1 solver time limit in seconds")
      ->capture_default_str();
  cmd->add_option("--phase1-nodes", p.phase1_node_limit,
                  "Phase-1 branch-and-bound node limit")
      ->capture_default_str();
  cmd->add_flag("--literal-best", p.literal_best_update,
                "Update the best schedule against the current one");
  cmd->add_flag("--accept-below-alpha", p.accept_worse_below_alpha,
                "Accept worse swaps when r < alpha");
}

void write_or_print(const std::string& path,
                    const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  write(out);
}

std::string join(const std::vector<int>& ids) {
  std::string out = "{";
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(ids[k] + 1);
  }
  return out + "}";
}

std::string scenario_text(const mmr::Scenario& s) {
  std::string out = "(";
  for (std::size_t j = 0; j < s.p.size(); ++j) {
    if (j) out += ", ";
    out += mmr::to_string(s.p[j]);
  }
  return out + ")";
}

mmr::Rational mip_regret(const mmr::Schedule& schedule,
                         const mmr::Instance& instance,
                         const std::string& dump_path = {}) {
  const mmr::RegretMip mip = mmr::build_regret_mip(schedule, instance);
  if (!dump_path.empty()) {
    std::ofstream out(dump_path);
    mmr::milp::write_lp_format(out, mip.model);
  }
  const auto solution = mmr::milp::solve_mip(mip.model);
  if (solution.status != mmr::milp::MipStatus::kOptimal) {
    throw Inconsistency(std::string("regret model not solved: ") +
                        mmr::milp::to_string(solution.status));
  }
  std::vector<mmr::Rational> weights;
  for (const auto& job : instance.jobs()) weights.push_back(job.weight);
  const auto scale = mmr::common_denominator(weights);
  return mmr::Rational(std::llround(solution.objective * scale), scale);
}

int run_gen(std::size_t n, bool weighted, std::uint64_t seed, int count,
            const std::string& out) {
  if (count <= 1) {
    const auto instance = mmr::generate_instance({n, weighted, seed});
    write_or_print(out, [&](std::ostream& os) {
      os << "# n=" << n << " weighted=" << weighted << " seed=" << seed << '\n';
      mmr::write_instance(os, instance);
    });
    return 0;
  }
  if (out.empty()) throw std::invalid_argument("--out directory required");
  std::filesystem::create_directories(out);
  for (int i = 0; i < count; ++i) {
    const auto s = mmr::bench_instance_seed(seed, n, i);
    const auto instance = mmr::generate_instance({n, weighted, s});
    const auto path = std::filesystem::path(out) /
                      ("instance_n" + std::to_string(n) + "_" +
                       std::to_string(i) + ".txt");
    std::ofstream os(path);
    os << "# n=" << n << " weighted=" << weighted << " seed=" << s << '\n';
    mmr::write_instance(os, instance);
  }
  return 0;
}

int run_eval(const InstanceArgs& args, const std::string& schedule_text,
             const std::string& method, const std::string& dump) {
  const auto instance = args.load();
  const auto schedule = mmr::parse_schedule(schedule_text, instance.size());
  if (method == "mip") {
    std::cout << "Z = " << mmr::to_string(mip_regret(schedule, instance, dump))
              << '\n';
    return 0;
  }
  const auto cert = method == "brute"
                        ? mmr::brute_force_max_regret(schedule, instance)
                        : mmr::max_regret(schedule, instance);
  if (!dump.empty()) mip_regret(schedule, instance, dump);
  std::cout << "Z = " << mmr::to_string(cert.value) << '\n'
            << "worst_scenario = " << scenario_text(cert.worst_scenario) << '\n'
            << "late_boundary = " << cert.late_boundary << '\n'
            << "adversary_ontime = " << join(cert.adversary.ontime_set) << '\n'
            << "adversary_schedule = "
            << mmr::format_schedule(cert.adversary.schedule) << '\n';
  return 0;
}

int run_solve(const InstanceArgs& args, const std::string& method,
              mmr::SearchParams params, std::uint64_t seed,
              const std::string& trace_path) {
  const auto instance = args.load();
  params.rng_seed = seed;
  mmr::Schedule schedule;
  mmr::Rational z;
  if (method == "midpoint") {
    schedule = mmr::midpoint_heuristic(instance);
    z = mmr::max_regret_value(schedule, instance);
  } else if (method == "exhaustive") {
    auto best = mmr::exhaustive_search(instance);
    schedule = best.schedule;
    z = best.max_regret;
  } else {
    auto result = mmr::two_phase(instance, params);
    schedule = result.schedule;
    z = result.max_regret;
    if (result.trace.phase1_fallback) {
      std::clog << "phase 1: no incumbent ("
                << mmr::milp::to_string(result.trace.phase1_status)
                << "), started from the midpoint schedule\n";
    }
    std::clog << "phase 1: Z = " << mmr::to_string(result.trace.phase1_z)
              << " after " << result.trace.phase1_nodes << " nodes; phase 2: "
              << result.trace.evaluations << " evaluations\n";
    if (!trace_path.empty()) {
      write_or_print(trace_path, [&](std::ostream& os) {
        mmr::write_trace_csv(os, result.trace);
      });
    }
  }
  std::cout << "schedule = " << mmr::format_schedule(schedule) << '\n'
            << "Z = " << mmr::to_string(z) << '\n';
  return 0;
}

int run_bench(const mmr::BenchConfig& config, const std::string& out,
              const std::string& times, const std::string& summary) {
  const auto report = mmr::run_benchmark(config);
  write_or_print(out, [&](std::ostream& os) { mmr::write_rows_csv(os, report); });
  if (!times.empty()) {
    write_or_print(times,
                   [&](std::ostream& os) { mmr::write_times_csv(os, report); });
  }
  if (!summary.empty()) {
    write_or_print(summary,
                   [&](std::ostream& os) { mmr::write_summary_csv(os, report); });
  }
  for (const auto& agg : report.aggregates) {
    std::clog << "n=" << agg.n << "  midpoint mean Z " << agg.midpoint.mean_z
              << " (std " << agg.midpoint.std_z << ")  two-phase mean Z "
              << agg.twophase.mean_z << " (std " << agg.twophase.std_z
              << ")  two-phase <= midpoint on " << agg.twophase_not_worse << "/"
              << agg.instances << '\n';
  }
  return 0;
}

int run_oracle(const InstanceArgs& args, const std::string& schedule_text,
               int random_count, std::uint64_t seed) {
  const auto instance = args.load();
  std::vector<mmr::Schedule> schedules;
  if (!schedule_text.empty()) {
    schedules.push_back(mmr::parse_schedule(schedule_text, instance.size()));
  } else {
    mmr::Rng rng(seed);
    std::vector<int> perm = mmr::Schedule::identity(instance.size()).perm();
    for (int r = 0; r < random_count; ++r) {
      for (std::size_t k = perm.size(); k > 1; --k) {
        std::swap(perm[k - 1], perm[rng.uniform_int(0, k - 1)]);
      }
      schedules.emplace_back(perm);
    }
  }
  const bool brute = instance.size() <= mmr::kBruteForceMaxJobs;
  int mismatches = 0;
  for (const auto& schedule : schedules) {
    const auto cert = mmr::max_regret(schedule, instance);
    const auto mip = mip_regret(schedule, instance);
    std::optional<mmr::Rational> bf;
    if (brute) bf = mmr::brute_force_max_regret(schedule, instance).value;
    const auto witness =
        mmr::evaluate(schedule, cert.worst_scenario, instance).objective -
        cert.adversary.opt_value;
    const bool ok = cert.value == mip && (!bf || *bf == cert.value) &&
                    (!instance.is_integral() || witness == cert.value);
    if (!ok) ++mismatches;
    std::cout << mmr::format_schedule(schedule)
              << "  decomposition=" << mmr::to_string(cert.value)
              << "  brute=" << (bf ? mmr::to_string(*bf) : "skipped")
              << "  mip=" << mmr::to_string(mip)
              << "  witness=" << mmr::to_string(witness)
              << (ok ? "  ok" : "  MISMATCH") << '\n';
  }
  if (mismatches) {
    throw Inconsistency(std::to_string(mismatches) + " schedule(s) disagree");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-max regret scheduling with interval processing times"};
  app.require_subcommand(1);

  std::size_t gen_n = 10;
  bool gen_weighted = false;
  std::uint64_t seed = 1;
  int gen_count = 1;
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Generate random instances");
  gen->add_option("-n,--jobs", gen_n, "Number of jobs")->capture_default_str();
  gen->add_flag("--weighted", gen_weighted, "Weights in 1..100");
  gen->add_option("--seed", seed, "Seed")->capture_default_str();
  gen->add_option("--count", gen_count, "Number of instances");
  gen->add_option("-o,--out", out_path, "Output file (directory if count > 1)");

  InstanceArgs instance_args;
  std::string schedule_text, method = "decomposition", dump_path;
  auto* eval = app.add_subcommand("eval", "Maximum regret of a schedule");
  add_instance_options(eval, instance_args);
  eval->add_option("-s,--schedule", schedule_text, "Jobs in order, e.g. 2,1,3")
      ->required();
  eval->add_option("--method", method, "decomposition | brute | mip")
      ->check(CLI::IsMember({"decomposition", "brute", "mip"}));
  eval->add_option("--dump-lp", dump_path, "Write the regret model (LP format)");

  mmr::SearchParams params;
  std::string solve_method = "twophase", trace_path;
  auto* solve = app.add_subcommand("solve", "Find a low-regret schedule");
  add_instance_options(solve, instance_args);
  solve->add_option("--method", solve_method, "midpoint | twophase | exhaustive")
      ->check(CLI::IsMember({"midpoint", "twophase", "exhaustive"}));
  solve->add_option("--seed", seed, "Search seed")->capture_default_str();
  solve->add_option("--trace", trace_path, "Write the search trace CSV");
  add_search_options(solve, params);

  mmr::BenchConfig bench_config;
  bench_config.threads = mmr::default_thread_count();
  std::string times_path, summary_path;
  auto* bench = app.add_subcommand("bench", "Midpoint vs two-phase benchmark");
  bench->add_option("--sizes", bench_config.sizes, "Job counts")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--count", bench_config.instances_per_n,
                    "Instances per size")
      ->capture_default_str();
  bench->add_flag("--weighted", bench_config.weighted, "Weights in 1..100");
  bench->add_option("--seed", bench_config.seed, "Experiment seed")
      ->capture_default_str();
  bench->add_option("--threads", bench_config.threads,
                    "Worker threads (default $MMR_THREADS or 1)");
  bench->add_option("-o,--out", out_path, "Per-instance CSV (default stdout)");
  bench->add_option("--times", times_path, "Per-instance timing CSV");
  bench->add_option("--summary", summary_path, "Aggregate CSV");
  add_search_options(bench, bench_config.params);

  int random_count = 20;
  auto* oracle = app.add_subcommand(
      "oracle", "Cross-check decomposition, brute force and MIP");
  add_instance_options(oracle, instance_args);
  oracle->add_option("-s,--schedule", schedule_text, "Single schedule to check");
  oracle->add_option("--random", random_count, "Random schedules to check")
      ->capture_default_str();
  oracle->add_option("--seed", seed, "Seed for random schedules");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*gen) return run_gen(gen_n, gen_weighted, seed, gen_count, out_path);
    if (*eval) return run_eval(instance_args, schedule_text, method, dump_path);
    if (*solve) {
      return run_solve(instance_args, solve_method, params, seed, trace_path);
    }
    if (*bench) return run_bench(bench_config, out_path, times_path, summary_path);
    if (*oracle) {
      return run_oracle(instance_args, schedule_text, random_count, seed);
    }
  } catch (const Inconsistency& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInconsistent;
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e) ||
        dynamic_cast<const std::out_of_range*>(&e)) {
      std::cerr << "error: " << e.what() << '\n';
      return kInputError;
    }
    std::cerr << "internal error: " << e.what() << '\n';
    return kInconsistent;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
