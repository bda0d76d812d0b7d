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

#include "mmr/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mmr {

using milp::Relation;
using milp::Term;

namespace {

std::string indexed(const char* base, int a) {
  return std::string(base) + "_" + std::to_string(a);
}

std::string indexed(const char* base, int a, int b) {
  return indexed(base, a) + "_" + std::to_string(b);
}

std::string indexed(const char* base, int a, int b, int c) {
  return indexed(base, a, b) + "_" + std::to_string(c);
}

}  // namespace

RegretMip build_regret_mip(const Schedule& schedule, const Instance& instance) {
  const int n = static_cast<int>(instance.size());
  if (static_cast<int>(schedule.size()) != n) {
    throw std::invalid_argument("schedule size does not match instance");
  }
  const double d = to_double(instance.due_date());
  const double d_eps = to_double(instance.due_date_plus_epsilon());

  RegretMip mip{milp::MipModel(milp::Sense::kMaximize), {}};
  auto& model = mip.model;
  auto& vars = mip.vars;
  for (int j = 0; j < n; ++j) {
    const Job& job = instance.job(j);
    const double w = to_double(job.weight);
    vars.p.push_back(model.add_variable(indexed("p", j), to_double(job.p_min),
                                        to_double(job.p_max)));
    vars.z.push_back(model.add_binary(indexed("z", j), w));
    vars.q.push_back(model.add_binary(indexed("q", j), -w));
    vars.v.push_back(
        model.add_variable(indexed("v", j), 0.0, to_double(job.p_max)));
  }

  std::vector<Term> knapsack;
  for (int j = 0; j < n; ++j) knapsack.push_back({vars.v[j], 1.0});
  model.add_constraint(std::move(knapsack), Relation::kLessEqual, d,
                       "adversary_capacity");

  std::vector<Term> prefix;
  for (int k = 0; k < n; ++k) {
    prefix.push_back({vars.p[schedule[k]], 1.0});
    std::vector<Term> row = prefix;
    row.push_back({vars.q[schedule[k]], d_eps});
    model.add_constraint(std::move(row), Relation::kGreaterEqual, d_eps,
                         indexed("late", k));
  }

  for (int j = 0; j < n; ++j) {
    const double p_max = to_double(instance.job(j).p_max);
    model.add_constraint({{vars.v[j], 1.0}, {vars.z[j], -p_max}},
                         Relation::kLessEqual, 0.0, indexed("vz_upper", j));
    model.add_constraint(
        {{vars.p[j], 1.0}, {vars.z[j], p_max}, {vars.v[j], -1.0}},
        Relation::kLessEqual, p_max, indexed("vz_lower", j));
    model.add_constraint({{vars.v[j], 1.0}, {vars.p[j], -1.0}},
                         Relation::kLessEqual, 0.0, indexed("vp_upper", j));
  }
  return mip;
}

RegretMipDecoded decode_regret_mip(const milp::MipSolution& solution,
                                   const RegretMipVars& vars,
                                   const Instance& instance) {
  if (!solution.has_incumbent()) {
    throw std::runtime_error("regret model has no incumbent");
  }
  RegretMipDecoded out;
  out.objective = solution.objective;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Job& job = instance.job(j);
    Rational p = approximate_rational(solution.values[vars.p[j]], 1000000);
    p = std::clamp(p, job.p_min, job.p_max);
    out.worst_scenario.p.push_back(p);
    if (solution.values[vars.z[j]] > 0.5) {
      out.adversary_ontime.push_back(static_cast<int>(j));
    }
    if (solution.values[vars.q[j]] > 0.5) {
      out.schedule_ontime.push_back(static_cast<int>(j));
    }
  }
  return out;
}

int Phase1MipVars::u_index(int k, int i, int j) const {
  const int n = static_cast<int>(x.rows());
  if (i > k) throw std::out_of_range("u(k, i, j) exists only for i <= k");
  return u[static_cast<std::size_t>(n) * (k * (k + 1) / 2 + i) + j];
}

// Minimize  sum_k -(d+eps) la_k + sum_j (p+ lb_j - p- lc_j + ld_j + le_j
//           + p+ lh_j) + d l0
// s.t. per job j:
//   -sum_k sum_{i<=k} u_kij + lb_j - lc_j - lg_j + lh_j >= 0   (column p_j)
//   -(d+eps) sum_k u_kkj + ld_j >= -w_j                        (column q_j)
//   le_j - p+ lf_j + p+ lh_j >= w_j                            (column z_j)
//   lf_j + lg_j - lh_j + l0 >= 0                               (column v_j)
// plus the assignment constraints on x and, per (k, i <= k, j),
//   u <= U x,  u <= la_k,  u >= la_k - U (1 - x).
Phase1Mip build_phase1_mip(const Instance& instance,
                           std::optional<double> lambda_a_bound) {
  const int n = static_cast<int>(instance.size());
  const double d = to_double(instance.due_date());
  const double d_eps = to_double(instance.due_date_plus_epsilon());
  double max_weight = 0.0;
  for (const Job& job : instance.jobs()) {
    max_weight = std::max(max_weight, to_double(job.weight));
  }
  const double big_u =
      lambda_a_bound ? *lambda_a_bound
                     : max_weight / to_double(instance.epsilon());

  Phase1Mip mip{milp::MipModel(milp::Sense::kMinimize), {}};
  auto& model = mip.model;
  auto& vars = mip.vars;
  vars.lambda_a_bound = big_u;
  const double inf = milp::kInfinity;

  vars.lambda0 = model.add_variable("l0", 0.0, inf, d);
  for (int k = 0; k < n; ++k) {
    vars.lambda_a.push_back(
        model.add_variable(indexed("la", k), 0.0, big_u, -d_eps));
  }
  for (int j = 0; j < n; ++j) {
    const double p_min = to_double(instance.job(j).p_min);
    const double p_max = to_double(instance.job(j).p_max);
    vars.lambda_b.push_back(model.add_variable(indexed("lb", j), 0.0, inf, p_max));
    vars.lambda_c.push_back(model.add_variable(indexed("lc", j), 0.0, inf, -p_min));
    vars.lambda_d.push_back(model.add_variable(indexed("ld", j), 0.0, inf, 1.0));
    vars.lambda_e.push_back(model.add_variable(indexed("le", j), 0.0, inf, 1.0));
    vars.lambda_f.push_back(model.add_variable(indexed("lf", j), 0.0, inf, 0.0));
    vars.lambda_g.push_back(model.add_variable(indexed("lg", j), 0.0, inf, 0.0));
    vars.lambda_h.push_back(model.add_variable(indexed("lh", j), 0.0, inf, p_max));
  }
  vars.x.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) vars.x(i, j) = model.add_binary(indexed("x", i, j));
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j < n; ++j) {
        vars.u.push_back(model.add_variable(indexed("u", k, i, j), 0.0, big_u));
      }
    }
  }

  for (int j = 0; j < n; ++j) {
    const double w = to_double(instance.job(j).weight);
    const double p_max = to_double(instance.job(j).p_max);

    std::vector<Term> column_p;
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i <= k; ++i) column_p.push_back({vars.u_index(k, i, j), -1.0});
    }
    column_p.push_back({vars.lambda_b[j], 1.0});
    column_p.push_back({vars.lambda_c[j], -1.0});
    column_p.push_back({vars.lambda_g[j], -1.0});
    column_p.push_back({vars.lambda_h[j], 1.0});
    model.add_constraint(std::move(column_p), Relation::kGreaterEqual, 0.0,
                         indexed("dual_p", j));

    std::vector<Term> column_q;
    for (int k = 0; k < n; ++k) column_q.push_back({vars.u_index(k, k, j), -d_eps});
    column_q.push_back({vars.lambda_d[j], 1.0});
    model.add_constraint(std::move(column_q), Relation::kGreaterEqual, -w,
                         indexed("dual_q", j));

    model.add_constraint({{vars.lambda_e[j], 1.0},
                          {vars.lambda_f[j], -p_max},
                          {vars.lambda_h[j], p_max}},
                         Relation::kGreaterEqual, w, indexed("dual_z", j));

    model.add_constraint({{vars.lambda_f[j], 1.0},
                          {vars.lambda_g[j], 1.0},
                          {vars.lambda_h[j], -1.0},
                          {vars.lambda0, 1.0}},
                         Relation::kGreaterEqual, 0.0, indexed("dual_v", j));
  }

  for (int j = 0; j < n; ++j) {
    std::vector<Term> row;
    for (int i = 0; i < n; ++i) row.push_back({vars.x(i, j), 1.0});
    model.add_constraint(std::move(row), Relation::kEqual, 1.0,
                         indexed("assign_job", j));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<Term> row;
    for (int j = 0; j < n; ++j) row.push_back({vars.x(i, j), 1.0});
    model.add_constraint(std::move(row), Relation::kEqual, 1.0,
                         indexed("assign_pos", i));
  }

  for (int k = 0; k < n; ++k) {
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j < n; ++j) {
        const int u = vars.u_index(k, i, j);
        const int x = vars.x(i, j);
        const int la = vars.lambda_a[k];
        model.add_constraint({{u, 1.0}, {x, -big_u}}, Relation::kLessEqual,
                             0.0, indexed("ux", k, i, j));
        model.add_constraint({{u, 1.0}, {la, -1.0}}, Relation::kLessEqual, 0.0,
                             indexed("ul", k, i, j));
        model.add_constraint({{la, 1.0}, {u, -1.0}, {x, big_u}},
                             Relation::kLessEqual, big_u,
                             indexed("ulx", k, i, j));
      }
    }
  }
  return mip;
}

void fix_assignment(Phase1Mip& mip, const Schedule& schedule) {
  const int n = static_cast<int>(mip.vars.x.rows());
  if (static_cast<int>(schedule.size()) != n) {
    throw std::invalid_argument("schedule size does not match model");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = schedule[i] == j ? 1.0 : 0.0;
      mip.model.set_bounds(mip.vars.x(i, j), v, v);
    }
  }
}

FractionalPattern relaxed_regret_pattern(const Schedule& schedule,
                                         const Instance& instance) {
  const RegretMip mip = build_regret_mip(schedule, instance);
  const milp::LpSolution lp = milp::solve_lp(mip.model);
  if (lp.status != milp::LpStatus::kOptimal) {
    throw std::runtime_error(std::string("regret relaxation: ") +
                             milp::to_string(lp.status));
  }
  FractionalPattern out;
  out.objective = lp.objective;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    out.z.push_back(std::clamp(lp.values[mip.vars.z[j]], 0.0, 1.0));
    out.q.push_back(std::clamp(lp.values[mip.vars.q[j]], 0.0, 1.0));
  }
  return out;
}

Phase1Decoded decode_phase1(const milp::MipSolution& solution,
                            const Phase1MipVars& vars,
                            const Instance& instance) {
  if (!solution.has_incumbent()) {
    throw std::runtime_error("phase-1 model has no incumbent");
  }
  const Eigen::Index n = vars.x.rows();
  Eigen::MatrixXd x(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) x(i, j) = solution.values[vars.x(i, j)];
  }
  Phase1Decoded out{schedule_from_matrix(x), {}, {}};
  const FractionalPattern pattern = relaxed_regret_pattern(out.x0, instance);
  out.z_tilde = pattern.z;
  out.q_tilde = pattern.q;
  return out;
}

}  // namespace mmr
