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

#ifndef MMR_MODELS_HPP_
#define MMR_MODELS_HPP_

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "mmr/core.hpp"
#include "mmr/milp.hpp"

namespace mmr {

/// Variable indices of the max-regret model, one entry per job.
struct RegretMipVars {
  std::vector<int> p;  // worst-case processing time, [p_min, p_max]
  std::vector<int> z;  // binary: on time for the adversary
  std::vector<int> q;  // binary: on time in the fixed schedule
  std::vector<int> v;  // p * z, [0, p_max]
};

struct RegretMip {
  milp::MipModel model;
  RegretMipVars vars;
};

/// Max-regret model of a fixed schedule:
///
///   maximize   sum_j w_j (z_j - q_j)
///   subject to sum_j v_j <= d
///              sum_{i<=k} p_{pi(i)} + (d+eps) q_{pi(k)} >= d+eps  (each k)
///              v_j <= p_max_j z_j
///              p_j + p_max_j z_j - v_j <= p_max_j
///              v_j <= p_j
///
/// Its optimum equals the maximum regret when epsilon is exact.
RegretMip build_regret_mip(const Schedule& schedule, const Instance& instance);

struct RegretMipDecoded {
  double objective = 0.0;
  /// p rounded to nearby rationals and clamped to the intervals.
  Scenario worst_scenario;
  std::vector<int> adversary_ontime;  // z = 1
  std::vector<int> schedule_ontime;   // q = 1
};

RegretMipDecoded decode_regret_mip(const milp::MipSolution& solution,
                                   const RegretMipVars& vars,
                                   const Instance& instance);

/// Variable indices of the phase-1 model (docs/phase1_dual.md).
struct Phase1MipVars {
  int lambda0 = -1;
  std::vector<int> lambda_a;  // one per position k
  std::vector<int> lambda_b, lambda_c, lambda_d, lambda_e, lambda_f,
      lambda_g, lambda_h;     // one per job j
  Eigen::MatrixXi x;          // x(i, j): job j at position i, binary
  /// u(k, i, j) = lambda_a[k] * x(i, j), stored for i <= k only; the
  /// products with i > k have zero coefficients everywhere.
  std::vector<int> u;
  /// Upper bound on lambda_a and u (the linearization constant).
  double lambda_a_bound = 0.0;

  int u_index(int k, int i, int j) const;
};

struct Phase1Mip {
  milp::MipModel model;
  Phase1MipVars vars;
};

/// Dual of the LP relaxation of the regret model, minimized jointly over the
/// dual multipliers and the assignment x, with the products lambda_a * x
/// linearized by u. lambda_a_bound defaults to max_j w_j / epsilon.
Phase1Mip build_phase1_mip(const Instance& instance,
                           std::optional<double> lambda_a_bound = std::nullopt);

/// Fixes the assignment block to the given schedule (the fixed-x restriction).
void fix_assignment(Phase1Mip& mip, const Schedule& schedule);

/// Optimal z and q of the LP relaxation of build_regret_mip(schedule).
struct FractionalPattern {
  double objective = 0.0;
  std::vector<double> z;
  std::vector<double> q;
};

/// Throws std::runtime_error if the LP does not solve to optimality.
FractionalPattern relaxed_regret_pattern(const Schedule& schedule,
                                         const Instance& instance);

struct Phase1Decoded {
  Schedule x0;
  std::vector<double> z_tilde;  // each in [0, 1]
  std::vector<double> q_tilde;  // each in [0, 1]
};

/// Reads x0 from the assignment block and recovers z~, q~ from the LP
/// relaxation of the regret model at x0. Throws std::runtime_error when the
/// solution has no incumbent.
Phase1Decoded decode_phase1(const milp::MipSolution& solution,
                            const Phase1MipVars& vars,
                            const Instance& instance);

}  // namespace mmr

#endif  // MMR_MODELS_HPP_
