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

#include "mmr/exact_regret.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mmr {

namespace {

using Int = std::int64_t;
using Wide = __int128;

// The instance in integer units: times multiplied by one common denominator,
// weights by another.
struct ScaledInstance {
  std::vector<Int> p_min, p_max, weight;
  Int due_date = 0;
  Int epsilon = 0;
  Int total_weight = 0;
  Int weight_scale = 1;

  explicit ScaledInstance(const Instance& instance) {
    std::vector<Rational> times{instance.due_date(), instance.epsilon()};
    std::vector<Rational> weights;
    for (const Job& job : instance.jobs()) {
      times.push_back(job.p_min);
      times.push_back(job.p_max);
      weights.push_back(job.weight);
    }
    const Int time_scale = common_denominator(times);
    weight_scale = common_denominator(weights);
    for (const Job& job : instance.jobs()) {
      p_min.push_back(scaled_integer(job.p_min, time_scale));
      p_max.push_back(scaled_integer(job.p_max, time_scale));
      weight.push_back(scaled_integer(job.weight, weight_scale));
      total_weight += weight.back();
    }
    due_date = scaled_integer(instance.due_date(), time_scale);
    epsilon = scaled_integer(instance.epsilon(), time_scale);
  }
};

// max w(T) subject to sum_T size1 <= cap1 and sum_T size2 <= cap2, searched
// depth first over items in decreasing weight. Only sets strictly heavier
// than `threshold` are recorded.
class TwoKnapsackSearch {
 public:
  TwoKnapsackSearch(const std::vector<int>& order, std::vector<Int> weight,
                    std::vector<Int> size1, std::vector<Int> size2, Int cap1,
                    Int cap2)
      : order_(order),
        weight_(std::move(weight)),
        size_{std::move(size1), std::move(size2)},
        cap_{cap1, cap2} {
    const std::size_t n = order_.size();
    suffix_.assign(n + 1, 0);
    for (std::size_t r = n; r-- > 0;) suffix_[r] = suffix_[r + 1] + weight_[r];
    for (int c = 0; c < 2; ++c) {
      by_ratio_[c].resize(n);
      std::iota(by_ratio_[c].begin(), by_ratio_[c].end(), 0);
      const auto& s = size_[c];
      std::stable_sort(by_ratio_[c].begin(), by_ratio_[c].end(),
                       [&](int a, int b) {
                         if (s[a] == 0 || s[b] == 0) {
                           return s[a] == 0 && s[b] != 0;
                         }
                         return Wide(weight_[a]) * s[b] >
                                Wide(weight_[b]) * s[a];
                       });
    }
  }

  /// Returns true if a set heavier than threshold was found.
  bool run(Int threshold) {
    best_weight_ = threshold;
    found_ = false;
    current_.clear();
    dfs(0, 0, 0, 0);
    return found_;
  }

  Int best_weight() const { return best_weight_; }
  /// Job ids of the best set, sorted.
  std::vector<int> best_set() const {
    std::vector<int> ids;
    for (int r : best_) ids.push_back(order_[r]);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

 private:
  Int fractional_bound(int c, std::size_t depth, Int room) const {
    Int total = 0;
    for (int r : by_ratio_[c]) {
      if (static_cast<std::size_t>(r) < depth) continue;
      const Int s = size_[c][r];
      if (s <= room) {
        total += weight_[r];
        room -= s;
      } else {
        total += static_cast<Int>(Wide(weight_[r]) * room / s);
        break;
      }
    }
    return total;
  }

  void dfs(std::size_t depth, Int w, Int used1, Int used2) {
    if (w > best_weight_) {
      best_weight_ = w;
      best_ = current_;
      found_ = true;
    }
    if (depth == order_.size()) return;
    Int bound = suffix_[depth];
    if (w + bound <= best_weight_) return;
    bound = std::min(bound, fractional_bound(0, depth, cap_[0] - used1));
    if (w + bound <= best_weight_) return;
    bound = std::min(bound, fractional_bound(1, depth, cap_[1] - used2));
    if (w + bound <= best_weight_) return;

    if (used1 + size_[0][depth] <= cap_[0] &&
        used2 + size_[1][depth] <= cap_[1]) {
      current_.push_back(static_cast<int>(depth));
      dfs(depth + 1, w + weight_[depth], used1 + size_[0][depth],
          used2 + size_[1][depth]);
      current_.pop_back();
    }
    dfs(depth + 1, w, used1, used2);
  }

  const std::vector<int>& order_;
  std::vector<Int> weight_;  // indexed by rank in order_
  std::vector<Int> size_[2];
  Int cap_[2];
  std::vector<Int> suffix_;
  std::vector<int> by_ratio_[2];

  std::vector<int> current_;
  std::vector<int> best_;
  Int best_weight_ = 0;
  bool found_ = false;
};

struct Candidate {
  Int value = 0;  // scaled weight units
  std::size_t late_boundary = 0;
  std::vector<int> ontime;
};

Candidate best_candidate(const Schedule& schedule, const Instance& instance) {
  const std::size_t n = instance.size();
  if (schedule.size() != n) {
    throw std::invalid_argument("schedule size does not match instance");
  }
  const ScaledInstance data(instance);
  const Int d_eps = data.due_date + data.epsilon;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return data.weight[a] > data.weight[b];
  });
  std::vector<Int> weight(n), size1(n), size2(n);
  for (std::size_t r = 0; r < n; ++r) {
    weight[r] = data.weight[order[r]];
    size1[r] = data.p_min[order[r]];
  }

  std::optional<Candidate> best;
  std::vector<bool> in_prefix(n, false);
  Int prefix_max = 0;
  Int prefix_weight = 0;  // weight of positions before l
  for (std::size_t l = 1; l <= n; ++l) {
    const int job = schedule[l - 1];
    in_prefix[job] = true;
    prefix_max += data.p_max[job];
    const Int late_weight = data.total_weight - prefix_weight;
    prefix_weight += data.weight[job];
    if (prefix_max < d_eps) continue;  // position l can never be late

    for (std::size_t r = 0; r < n; ++r) {
      const int j = order[r];
      size2[r] = in_prefix[j] ? data.p_max[j] : data.p_min[j];
    }
    TwoKnapsackSearch search(order, weight, size1, size2, data.due_date,
                             prefix_max - data.epsilon);
    const Int threshold = best ? best->value - late_weight + data.total_weight
                               : std::numeric_limits<Int>::min();
    if (search.run(threshold)) {
      best = Candidate{late_weight + search.best_weight() - data.total_weight,
                       l, search.best_set()};
    }
  }

  // No forced-late suffix: only the adversary's knapsack at p_min binds.
  TwoKnapsackSearch search(order, weight, size1, std::vector<Int>(n, 0),
                           data.due_date, 0);
  const Int threshold = best ? best->value + data.total_weight
                             : std::numeric_limits<Int>::min();
  if (search.run(threshold)) {
    best = Candidate{search.best_weight() - data.total_weight, n + 1,
                     search.best_set()};
  }
  best->value = std::max<Int>(best->value, 0);
  return *best;
}

Rational to_weight(Int value, const Instance& instance) {
  std::vector<Rational> weights;
  for (const Job& job : instance.jobs()) weights.push_back(job.weight);
  return Rational(value, common_denominator(weights));
}

RegretCertificate make_certificate(const Rational& value, std::size_t l,
                                   std::vector<int> ontime,
                                   const Schedule& schedule,
                                   const Instance& instance) {
  const auto sigma = feasible_interval(l, ontime, schedule, instance);
  if (!sigma) {
    throw std::logic_error("best regret candidate has an empty interval");
  }
  RegretCertificate cert;
  cert.value = value;
  cert.worst_scenario =
      scenario_from_certificate(l, ontime, *sigma, schedule, instance);
  cert.adversary = best_response(cert.worst_scenario, instance);
  cert.late_boundary = l;
  cert.adversary_ontime = std::move(ontime);
  return cert;
}

// Membership masks for the first l positions (empty when l = n+1) and for T.
void membership(std::size_t l, const std::vector<int>& ontime,
                const Schedule& schedule, std::vector<bool>& in_prefix,
                std::vector<bool>& in_ontime) {
  const std::size_t n = schedule.size();
  if (l < 1 || l > n + 1) throw std::invalid_argument("boundary out of range");
  in_prefix.assign(n, false);
  in_ontime.assign(n, false);
  if (l <= n) {
    for (std::size_t k = 0; k < l; ++k) in_prefix[schedule[k]] = true;
  }
  for (int j : ontime) {
    if (j < 0 || static_cast<std::size_t>(j) >= n) {
      throw std::invalid_argument("job id out of range");
    }
    in_ontime[j] = true;
  }
}

}  // namespace

std::optional<Rational> feasible_interval(std::size_t l,
                                          const std::vector<int>& adversary_ontime,
                                          const Schedule& schedule,
                                          const Instance& instance) {
  std::vector<bool> in_prefix, in_ontime;
  membership(l, adversary_ontime, schedule, in_prefix, in_ontime);
  Rational shared_min, shared_max, prefix_only_max, ontime_only_min;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Job& job = instance.job(j);
    if (in_prefix[j] && in_ontime[j]) {
      shared_min += job.p_min;
      shared_max += job.p_max;
    } else if (in_prefix[j]) {
      prefix_only_max += job.p_max;
    } else if (in_ontime[j]) {
      ontime_only_min += job.p_min;
    }
  }
  Rational lo = shared_min;
  if (l <= instance.size()) {
    lo = std::max(lo, instance.due_date_plus_epsilon() - prefix_only_max);
  }
  const Rational hi =
      std::min(shared_max, instance.due_date() - ontime_only_min);
  if (lo > hi) return std::nullopt;
  return lo;
}

Scenario scenario_from_certificate(std::size_t l,
                                   const std::vector<int>& adversary_ontime,
                                   const Rational& sigma,
                                   const Schedule& schedule,
                                   const Instance& instance) {
  std::vector<bool> in_prefix, in_ontime;
  membership(l, adversary_ontime, schedule, in_prefix, in_ontime);
  const std::size_t n = instance.size();
  Scenario s;
  s.p.resize(n);
  Rational shared_min;
  for (std::size_t j = 0; j < n; ++j) {
    const Job& job = instance.job(j);
    s.p[j] = (in_prefix[j] && !in_ontime[j]) ? job.p_max : job.p_min;
    if (in_prefix[j] && in_ontime[j]) shared_min += job.p_min;
  }
  Rational remaining = sigma - shared_min;
  if (remaining < 0) throw std::logic_error("sigma below shared minimum");
  for (std::size_t j = 0; j < n && remaining > 0; ++j) {
    if (!(in_prefix[j] && in_ontime[j])) continue;
    const Rational add = std::min(remaining, instance.job(j).p_max - s.p[j]);
    s.p[j] += add;
    remaining -= add;
  }
  if (remaining != 0) throw std::logic_error("sigma above shared maximum");

  Rational ontime_sum;
  for (int j : adversary_ontime) ontime_sum += s.p[j];
  if (ontime_sum > instance.due_date()) {
    throw std::logic_error("witness scenario: adversary set exceeds due date");
  }
  if (l <= n) {
    Rational prefix;
    for (std::size_t k = 0; k < l; ++k) prefix += s.p[schedule[k]];
    if (prefix < instance.due_date_plus_epsilon()) {
      throw std::logic_error("witness scenario: boundary position not late");
    }
  }
  return s;
}

RegretCertificate max_regret(const Schedule& schedule,
                             const Instance& instance) {
  Candidate best = best_candidate(schedule, instance);
  return make_certificate(to_weight(best.value, instance), best.late_boundary,
                          std::move(best.ontime), schedule, instance);
}

Rational max_regret_value(const Schedule& schedule, const Instance& instance) {
  return to_weight(best_candidate(schedule, instance).value, instance);
}

RegretCertificate brute_force_max_regret(const Schedule& schedule,
                                         const Instance& instance) {
  const std::size_t n = instance.size();
  if (n > kBruteForceMaxJobs) {
    throw std::invalid_argument("brute force limited to " +
                                std::to_string(kBruteForceMaxJobs) + " jobs");
  }
  if (schedule.size() != n) {
    throw std::invalid_argument("schedule size does not match instance");
  }
  const Rational total = instance.total_weight();
  std::optional<Rational> best;
  std::size_t best_l = n + 1;
  std::vector<int> best_set;
  Rational late_weight = total;  // weight of positions l..n
  for (std::size_t l = 1; l <= n + 1; ++l) {
    if (l == n + 1) late_weight = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> ontime;
      Rational ontime_weight;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (1u << j)) {
          ontime.push_back(static_cast<int>(j));
          ontime_weight += instance.job(j).weight;
        }
      }
      if (!feasible_interval(l, ontime, schedule, instance)) continue;
      const Rational value = late_weight + ontime_weight - total;
      if (!best || value > *best) {
        best = value;
        best_l = l;
        best_set = std::move(ontime);
      }
    }
    if (l <= n) late_weight -= instance.job(schedule[l - 1]).weight;
  }
  return make_certificate(std::max(*best, Rational(0)), best_l,
                          std::move(best_set), schedule, instance);
}

}  // namespace mmr
