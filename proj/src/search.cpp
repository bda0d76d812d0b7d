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

#include "mmr/search.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "mmr/deterministic.hpp"
#include "mmr/exact_regret.hpp"
#include "mmr/models.hpp"

namespace mmr {

namespace {

struct PermutationHash {
  std::size_t operator()(const std::vector<int>& perm) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : perm) {
      h ^= static_cast<std::size_t>(v);
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

void SearchParams::validate() const {
  if (rounding_iterations < 0 || local_search_iterations < 0) {
    throw std::invalid_argument("iteration counts must be nonnegative");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (!(phase1_time_limit >= 0.0) || phase1_node_limit < 0) {
    throw std::invalid_argument("phase-1 limits must be nonnegative");
  }
}

void write_trace_csv(std::ostream& out, const SearchTrace& trace) {
  out << "iteration,candidate_z,accepted,best_z\n";
  for (const SearchStep& step : trace.steps) {
    out << step.iteration << ','
        << (step.candidate_z ? to_string(*step.candidate_z) : "") << ','
        << (step.accepted ? 1 : 0) << ',' << to_string(step.best_z) << '\n';
  }
}

Schedule round_repair(const std::vector<bool>& z, const std::vector<bool>& q,
                      const Instance& instance) {
  const std::size_t n = instance.size();
  if (z.size() != n || q.size() != n) {
    throw std::invalid_argument("rounding pattern size mismatch");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (q[a] != q[b]) return static_cast<bool>(q[a]);
    const Job& ja = instance.job(a);
    const Job& jb = instance.job(b);
    return q[a] ? ja.p_max < jb.p_max : ja.p_min < jb.p_min;
  });
  return Schedule(std::move(order));
}

Schedule phase1(const Instance& instance, const SearchParams& params, Rng& rng,
                SearchTrace* trace) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  SearchTrace local;
  SearchTrace& t = trace ? *trace : local;

  Phase1Mip mip = build_phase1_mip(instance);
  milp::MipOptions options;
  options.time_limit = params.phase1_time_limit;
  options.node_limit = params.phase1_node_limit;
  const milp::MipSolution solution = milp::solve_mip(mip.model, options);
  t.phase1_status = solution.status;
  t.phase1_nodes = solution.node_count;

  Schedule x0;
  std::vector<double> z_tilde, q_tilde;
  if (solution.has_incumbent()) {
    Phase1Decoded decoded = decode_phase1(solution, mip.vars, instance);
    x0 = std::move(decoded.x0);
    z_tilde = std::move(decoded.z_tilde);
    q_tilde = std::move(decoded.q_tilde);
  } else {
    t.phase1_fallback = true;
    x0 = midpoint_heuristic(instance);
    try {
      FractionalPattern pattern = relaxed_regret_pattern(x0, instance);
      z_tilde = std::move(pattern.z);
      q_tilde = std::move(pattern.q);
    } catch (const std::runtime_error&) {
      // No fractional pattern: the rounding loop is skipped.
    }
  }

  Rational best = max_regret_value(x0, instance);
  t.phase1_decoded_z = best;
  const std::size_t n = instance.size();
  if (z_tilde.size() == n && q_tilde.size() == n) {
    std::vector<bool> z(n), q(n);
    for (int it = 0; it < params.rounding_iterations; ++it) {
      for (std::size_t j = 0; j < n; ++j) z[j] = rng.bernoulli(z_tilde[j]);
      for (std::size_t j = 0; j < n; ++j) q[j] = rng.bernoulli(q_tilde[j]);
      Schedule candidate = round_repair(z, q, instance);
      const Rational value = max_regret_value(candidate, instance);
      ++t.rounding_evaluations;
      if (value < best) {
        best = value;
        x0 = std::move(candidate);
      }
    }
  }
  t.phase1_z = best;
  t.phase1_seconds = seconds_since(start);
  return x0;
}

Schedule phase2(const Schedule& initial, const Instance& instance,
                const SearchParams& params, Rng& rng, SearchTrace* trace) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  SearchTrace local;
  SearchTrace& t = trace ? *trace : local;
  const std::size_t n = instance.size();
  if (initial.size() != n) {
    throw std::invalid_argument("initial schedule size mismatch");
  }
  if (n < 2) {
    t.phase2_seconds = seconds_since(start);
    return initial;
  }

  std::vector<int> current = initial.perm();
  Rational current_z = max_regret_value(initial, instance);
  std::vector<int> best = current;
  Rational best_z = current_z;
  std::unordered_set<std::vector<int>, PermutationHash> visited{current};
  const std::int64_t n64 = static_cast<std::int64_t>(n);
  const std::size_t max_draws = n * (n - 1) / 2;

  for (int it = 1; it <= params.local_search_iterations; ++it) {
    SearchStep step;
    step.iteration = it;
    std::vector<int> candidate;
    bool fresh = false;
    for (std::size_t draw = 0; draw < max_draws; ++draw) {
      const auto a = static_cast<std::size_t>(rng.uniform_int(0, n64 - 1));
      auto b = static_cast<std::size_t>(rng.uniform_int(0, n64 - 2));
      if (b >= a) ++b;
      candidate = current;
      std::swap(candidate[a], candidate[b]);
      if (visited.insert(candidate).second) {
        fresh = true;
        break;
      }
    }
    if (!fresh) {
      ++t.skipped_iterations;
      step.best_z = best_z;
      t.steps.push_back(step);
      continue;
    }

    const Rational z = max_regret_value(Schedule(candidate), instance);
    ++t.evaluations;
    step.candidate_z = z;
    const Rational& reference = params.literal_best_update ? current_z : best_z;
    if (z < reference) {
      best = candidate;
      best_z = z;
    }
    bool move = z <= current_z;
    if (!move) {
      const double r = rng.uniform_real();
      move = params.accept_worse_below_alpha ? r < params.alpha
                                             : r > params.alpha;
    }
    if (move) {
      current = std::move(candidate);
      current_z = z;
    }
    step.accepted = move;
    step.best_z = best_z;
    t.steps.push_back(step);
  }
  t.tabu_size = visited.size();
  t.phase2_seconds = seconds_since(start);
  return Schedule(std::move(best));
}

TwoPhaseResult two_phase(const Instance& instance, const SearchParams& params) {
  params.validate();
  TwoPhaseResult result;
  Rng rng(params.rng_seed);
  const Schedule initial = phase1(instance, params, rng, &result.trace);
  result.schedule = phase2(initial, instance, params, rng, &result.trace);
  result.max_regret = max_regret_value(result.schedule, instance);
  return result;
}

}  // namespace mmr
