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

#include "mmr/deterministic.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace mmr {

namespace {

constexpr std::int64_t kMaxDpScale = 10000;
constexpr std::int64_t kMaxDpCells = 20'000'000;

BestResponse make_response(std::vector<int> ontime, const Scenario& scenario,
                           const Instance& instance) {
  std::sort(ontime.begin(), ontime.end());
  Rational on_weight;
  for (int j : ontime) on_weight += instance.job(j).weight;
  BestResponse br;
  br.opt_value = instance.total_weight() - on_weight;
  br.schedule = ontime_first_schedule(ontime, scenario);
  br.ontime_set = std::move(ontime);
  return br;
}

// Returns the chosen ids or an empty optional when the table would be too big.
std::optional<std::vector<int>> knapsack_dp(const Scenario& scenario,
                                            const Instance& instance,
                                            bool force) {
  const std::size_t n = instance.size();
  std::vector<Rational> times = scenario.p;
  times.push_back(instance.due_date());
  const std::int64_t scale = common_denominator(times);
  std::vector<Rational> weights;
  for (const Job& job : instance.jobs()) weights.push_back(job.weight);
  const std::int64_t wscale = common_denominator(weights);

  const std::int64_t capacity = scaled_integer(instance.due_date(), scale);
  const std::int64_t cells =
      static_cast<std::int64_t>(n + 1) * (capacity + 1);
  if (!force && (scale > kMaxDpScale || cells > kMaxDpCells)) {
    return std::nullopt;
  }

  std::vector<std::int64_t> size(n), value(n);
  for (std::size_t j = 0; j < n; ++j) {
    size[j] = scaled_integer(scenario.p[j], scale);
    value[j] = scaled_integer(instance.job(j).weight, wscale);
  }
  const auto width = static_cast<std::size_t>(capacity + 1);
  // best[i * width + c]: max value from items i..n-1 within capacity c.
  std::vector<std::int64_t> best((n + 1) * width, 0);
  for (std::size_t i = n; i-- > 0;) {
    const std::int64_t* next = &best[(i + 1) * width];
    std::int64_t* row = &best[i * width];
    for (std::int64_t c = 0; c <= capacity; ++c) {
      row[c] = next[c];
      if (size[i] <= c) row[c] = std::max(row[c], value[i] + next[c - size[i]]);
    }
  }
  const std::int64_t target = best[capacity];
  std::int64_t cap = 0;
  while (best[cap] != target) ++cap;  // least capacity reaching the optimum

  std::vector<int> chosen;
  std::int64_t need = target;
  for (std::size_t i = 0; i < n; ++i) {
    if (size[i] <= cap &&
        value[i] + best[(i + 1) * width + (cap - size[i])] >= need) {
      chosen.push_back(static_cast<int>(i));
      cap -= size[i];
      need -= value[i];
    }
  }
  return chosen;
}

struct KnapsackSearch {
  const Scenario& scenario;
  const Instance& instance;
  std::vector<int> by_ratio;  // ids sorted by weight / size, descending

  std::vector<int> current;
  Rational current_weight, current_size;

  std::vector<int> best;
  Rational best_weight{-1}, best_size;

  Rational bound(std::size_t next, const Rational& room) const {
    Rational extra;
    Rational left = room;
    for (int j : by_ratio) {
      if (static_cast<std::size_t>(j) < next) continue;
      const Rational& s = scenario.p[j];
      const Rational& w = instance.job(j).weight;
      if (s <= left) {
        extra += w;
        left -= s;
      } else {
        extra += w * left / s;
        break;
      }
    }
    return current_weight + extra;
  }

  bool better_than_best() const {
    if (current_weight != best_weight) return current_weight > best_weight;
    if (current_size != best_size) return current_size < best_size;
    return std::lexicographical_compare(current.begin(), current.end(),
                                        best.begin(), best.end());
  }

  void run(std::size_t next) {
    if (next == instance.size()) {
      if (better_than_best()) {
        best = current;
        best_weight = current_weight;
        best_size = current_size;
      }
      return;
    }
    const Rational room = instance.due_date() - current_size;
    if (bound(next, room) < best_weight) return;
    const Rational& s = scenario.p[next];
    if (s <= room) {
      current.push_back(static_cast<int>(next));
      current_weight += instance.job(next).weight;
      current_size += s;
      run(next + 1);
      current.pop_back();
      current_weight -= instance.job(next).weight;
      current_size -= s;
    }
    run(next + 1);
  }
};

std::vector<int> knapsack_branch_and_bound(const Scenario& scenario,
                                           const Instance& instance) {
  KnapsackSearch search{scenario, instance, {}, {}, {}, {}, {}, Rational(-1), {}};
  search.by_ratio.resize(instance.size());
  std::iota(search.by_ratio.begin(), search.by_ratio.end(), 0);
  std::stable_sort(search.by_ratio.begin(), search.by_ratio.end(),
                   [&](int a, int b) {
                     // w_a / s_a > w_b / s_b, zero sizes first.
                     const Rational lhs = instance.job(a).weight * scenario.p[b];
                     const Rational rhs = instance.job(b).weight * scenario.p[a];
                     if (scenario.p[a] == 0 || scenario.p[b] == 0) {
                       return scenario.p[a] == 0 && scenario.p[b] != 0;
                     }
                     return lhs > rhs;
                   });
  search.run(0);
  return search.best;
}

}  // namespace

Schedule ontime_first_schedule(const std::vector<int>& ontime_set,
                               const Scenario& scenario) {
  const std::size_t n = scenario.p.size();
  std::vector<int> first = ontime_set;
  std::stable_sort(first.begin(), first.end(), [&](int a, int b) {
    if (scenario.p[a] != scenario.p[b]) return scenario.p[a] < scenario.p[b];
    return a < b;
  });
  std::vector<bool> used(n, false);
  for (int j : first) used[j] = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (!used[j]) first.push_back(static_cast<int>(j));
  }
  return Schedule(std::move(first));
}

BestResponse best_response(const Scenario& scenario, const Instance& instance,
                           KnapsackAlgorithm algorithm) {
  if (scenario.p.size() != instance.size()) {
    throw std::invalid_argument("scenario size does not match instance");
  }
  if (algorithm != KnapsackAlgorithm::kBranchAndBound) {
    auto chosen = knapsack_dp(scenario, instance,
                              algorithm == KnapsackAlgorithm::kDynamicProgramming);
    if (chosen) return make_response(std::move(*chosen), scenario, instance);
  }
  return make_response(knapsack_branch_and_bound(scenario, instance), scenario,
                       instance);
}

BestResponse unweighted_best_response(const Scenario& scenario,
                                      const Instance& instance) {
  const std::size_t n = instance.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scenario.p[a] < scenario.p[b];
  });
  std::vector<int> ontime;
  Rational used;
  for (int j : order) {
    if (used + scenario.p[j] > instance.due_date()) break;
    used += scenario.p[j];
    ontime.push_back(j);
  }
  return make_response(std::move(ontime), scenario, instance);
}

Schedule midpoint_heuristic(const Instance& instance) {
  return best_response(midpoint_scenario(instance), instance).schedule;
}

}  // namespace mmr
