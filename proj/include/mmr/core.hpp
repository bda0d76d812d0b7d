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

#ifndef MMR_CORE_HPP_
#define MMR_CORE_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mmr/rational.hpp"

namespace mmr {

struct Job {
  int id = 0;
  Rational p_min;
  Rational p_max;
  Rational weight{1};
};

/// A set of jobs with interval processing times and a common due date.
///
/// The instance also carries the strictness offset epsilon: inside the
/// mixed-integer models and the regret decomposition "late" is written as
/// "completion >= due_date + epsilon". With integer data epsilon = 1 makes
/// that exact. Everywhere else lateness is the plain comparison C > d.
class Instance {
 public:
  /// Validates the data. When epsilon is not given it defaults to 1 for
  /// all-integer instances and to due_date / 10^6 otherwise.
  Instance(std::vector<Job> jobs, Rational due_date,
           std::optional<Rational> epsilon = std::nullopt);

  std::size_t size() const { return jobs_.size(); }
  const std::vector<Job>& jobs() const { return jobs_; }
  const Job& job(std::size_t j) const { return jobs_[j]; }
  const Rational& due_date() const { return due_date_; }
  const Rational& epsilon() const { return epsilon_; }
  Rational due_date_plus_epsilon() const { return due_date_ + epsilon_; }

  Rational total_weight() const;
  Rational total_p_max() const;
  /// True when all bounds, the due date and epsilon are integers.
  bool is_integral() const;
  bool is_unweighted() const;

 private:
  std::vector<Job> jobs_;
  Rational due_date_;
  Rational epsilon_;
};

/// One realized processing-time vector.
struct Scenario {
  std::vector<Rational> p;

  bool within(const Instance& instance) const;
};

Scenario lower_scenario(const Instance& instance);
Scenario upper_scenario(const Instance& instance);
Scenario midpoint_scenario(const Instance& instance);

/// A job sequence; perm()[k] is the job processed at position k (0-based).
class Schedule {
 public:
  Schedule() = default;
  /// Throws std::invalid_argument unless perm is a bijection on 0..n-1.
  explicit Schedule(std::vector<int> perm);

  static Schedule identity(std::size_t n);

  std::size_t size() const { return perm_.size(); }
  int operator[](std::size_t k) const { return perm_[k]; }
  const std::vector<int>& perm() const { return perm_; }
  /// Inverse permutation: position of each job.
  std::vector<int> positions() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::vector<int> perm_;
};

/// x(k, j) = 1 iff job j is at position k.
Eigen::MatrixXi permutation_matrix(const Schedule& schedule);
/// Reads a (possibly floating) assignment matrix, taking the largest entry of
/// each row. Throws if the rows do not select distinct columns.
Schedule schedule_from_matrix(const Eigen::Ref<const Eigen::MatrixXd>& x);

struct EvalResult {
  Rational objective;
  /// First late position, 1-based; size()+1 when every job is on time.
  std::size_t late_boundary = 1;
  std::vector<Rational> completions;
};

/// Weighted number of late jobs of the schedule under the scenario.
/// Position k is on time iff its completion time is <= due_date.
EvalResult evaluate(const Schedule& schedule, const Scenario& scenario,
                    const Instance& instance);

/// F(schedule, scenario) - opt_value, where opt_value is the best objective
/// achievable under the scenario.
Rational regret(const Schedule& schedule, const Scenario& scenario,
                const Instance& instance, const Rational& opt_value);

/// Raised by the instance reader; what() names the offending line.
class InstanceFormatError : public std::runtime_error {
 public:
  InstanceFormatError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Instance text format, whitespace separated, '#' starts a comment line:
//   n d
//   p_min p_max weight      (n lines)
// Numbers are integers or fractions a/b.
Instance read_instance(std::istream& in,
                       std::optional<Rational> epsilon = std::nullopt);
Instance load_instance(const std::string& path,
                       std::optional<Rational> epsilon = std::nullopt);
void write_instance(std::ostream& out, const Instance& instance);

/// Parses a comma separated 1-based job list such as "2,1,3".
Schedule parse_schedule(std::string_view text, std::size_t n);
/// Formats as a comma separated 1-based job list.
std::string format_schedule(const Schedule& schedule);

}  // namespace mmr

#endif  // MMR_CORE_HPP_
