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

// Internal interface of the simplex engine shared by solve_lp and solve_mip.

#ifndef MMR_SRC_SIMPLEX_HPP_
#define MMR_SRC_SIMPLEX_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "mmr/milp.hpp"

namespace mmr::milp::internal {

enum class VarState : std::int8_t { kBasic, kAtLower, kAtUpper, kFree };

/// Basis snapshot used for warm starts. Columns are the structural variables
/// followed by one logical (row activity) column per constraint.
struct Basis {
  std::vector<int> head;        // basic column of each row
  std::vector<VarState> state;  // per column

  bool empty() const { return head.empty(); }
};

struct SimplexResult {
  LpStatus status = LpStatus::kNumericalFailure;
  std::vector<double> values;  // structural columns
  double objective = 0.0;      // minimization form
  std::int64_t iterations = 0;
  Basis basis;
};

/// Minimizes c'x subject to A x = r, row_lower <= r <= row_upper and
/// lower <= x <= upper. Maximization models are negated on construction.
class SimplexSolver {
 public:
  explicit SimplexSolver(const MipModel& model);

  int num_structural() const { return static_cast<int>(cost_.size()); }
  int num_rows() const { return static_cast<int>(row_lower_.size()); }

  /// Model bounds with binaries relaxed to [0, 1].
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

  SimplexResult solve(std::span<const double> lower,
                      std::span<const double> upper, const Basis* warm = nullptr,
                      std::int64_t iteration_limit = -1) const;

 private:
  Eigen::SparseMatrix<double> matrix_;  // rows x structural
  std::vector<double> cost_;
  std::vector<double> lower_, upper_;
  std::vector<double> row_lower_, row_upper_;
};

}  // namespace mmr::milp::internal

#endif  // MMR_SRC_SIMPLEX_HPP_
