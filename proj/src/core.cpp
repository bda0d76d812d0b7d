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

#include "mmr/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mmr {

namespace {

std::int64_t parse_int64(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int64(text));
  const std::int64_t num = parse_int64(text.substr(0, slash));
  const std::int64_t den = parse_int64(text.substr(slash + 1));
  if (den <= 0) {
    throw std::invalid_argument("bad denominator in '" + std::string(text) +
                                "'");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" +
         std::to_string(value.denominator());
}

std::int64_t scaled_integer(const Rational& value, std::int64_t scale) {
  const Rational scaled = value * scale;
  if (scaled.denominator() != 1) {
    throw std::logic_error("scale does not clear denominator of " +
                           to_string(value));
  }
  return scaled.numerator();
}

Rational approximate_rational(double value, std::int64_t max_denominator) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot approximate non-finite value");
  }
  // Continued-fraction convergents.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = value;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_floor = std::floor(x);
    if (std::abs(a_floor) > 9e15) break;
    const auto a = static_cast<std::int64_t>(a_floor);
    const std::int64_t q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    const std::int64_t p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - a_floor;
    if (frac < 1e-12) break;
    x = 1.0 / frac;
  }
  if (q1 == 0) return Rational(static_cast<std::int64_t>(std::llround(value)));
  return Rational(p1, q1);
}

Instance::Instance(std::vector<Job> jobs, Rational due_date,
                   std::optional<Rational> epsilon)
    : jobs_(std::move(jobs)), due_date_(due_date) {
  if (jobs_.empty()) throw std::invalid_argument("an instance needs a job");
  if (due_date_ <= 0) throw std::invalid_argument("due date must be positive");
  for (std::size_t j = 0; j < jobs_.size(); ++j) {
    const Job& job = jobs_[j];
    if (job.id != static_cast<int>(j)) {
      throw std::invalid_argument("job ids must be 0..n-1 in order");
    }
    if (job.p_min < 0 || job.p_max < job.p_min) {
      throw std::invalid_argument("job " + std::to_string(j) +
                                  ": need 0 <= p_min <= p_max");
    }
    if (job.weight < 0) {
      throw std::invalid_argument("job " + std::to_string(j) +
                                  ": negative weight");
    }
  }
  if (epsilon) {
    epsilon_ = *epsilon;
  } else {
    bool integral = is_integer(due_date_);
    for (const Job& job : jobs_) {
      integral = integral && is_integer(job.p_min) && is_integer(job.p_max);
    }
    epsilon_ = integral ? Rational(1) : due_date_ / 1000000;
  }
  if (epsilon_ <= 0) throw std::invalid_argument("epsilon must be positive");
}

Rational Instance::total_weight() const {
  Rational total;
  for (const Job& job : jobs_) total += job.weight;
  return total;
}

Rational Instance::total_p_max() const {
  Rational total;
  for (const Job& job : jobs_) total += job.p_max;
  return total;
}

bool Instance::is_integral() const {
  if (!is_integer(due_date_) || !is_integer(epsilon_)) return false;
  return std::all_of(jobs_.begin(), jobs_.end(), [](const Job& job) {
    return is_integer(job.p_min) && is_integer(job.p_max) &&
           is_integer(job.weight);
  });
}

bool Instance::is_unweighted() const {
  return std::all_of(jobs_.begin(), jobs_.end(),
                     [](const Job& job) { return job.weight == 1; });
}

bool Scenario::within(const Instance& instance) const {
  if (p.size() != instance.size()) return false;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] < instance.job(j).p_min || p[j] > instance.job(j).p_max) {
      return false;
    }
  }
  return true;
}

Scenario lower_scenario(const Instance& instance) {
  Scenario s;
  for (const Job& job : instance.jobs()) s.p.push_back(job.p_min);
  return s;
}

Scenario upper_scenario(const Instance& instance) {
  Scenario s;
  for (const Job& job : instance.jobs()) s.p.push_back(job.p_max);
  return s;
}

Scenario midpoint_scenario(const Instance& instance) {
  Scenario s;
  for (const Job& job : instance.jobs()) {
    s.p.push_back(job.p_min + (job.p_max - job.p_min) / 2);
  }
  return s;
}

Schedule::Schedule(std::vector<int> perm) : perm_(std::move(perm)) {
  std::vector<bool> seen(perm_.size(), false);
  for (int job : perm_) {
    if (job < 0 || static_cast<std::size_t>(job) >= perm_.size() ||
        seen[job]) {
      throw std::invalid_argument("schedule is not a permutation");
    }
    seen[job] = true;
  }
}

Schedule Schedule::identity(std::size_t n) {
  std::vector<int> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[k] = static_cast<int>(k);
  return Schedule(std::move(perm));
}

std::vector<int> Schedule::positions() const {
  std::vector<int> pos(perm_.size());
  for (std::size_t k = 0; k < perm_.size(); ++k) {
    pos[perm_[k]] = static_cast<int>(k);
  }
  return pos;
}

Eigen::MatrixXi permutation_matrix(const Schedule& schedule) {
  const auto n = static_cast<Eigen::Index>(schedule.size());
  Eigen::MatrixXi x = Eigen::MatrixXi::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) x(k, schedule[k]) = 1;
  return x;
}

Schedule schedule_from_matrix(const Eigen::Ref<const Eigen::MatrixXd>& x) {
  if (x.rows() != x.cols()) {
    throw std::invalid_argument("assignment matrix must be square");
  }
  std::vector<int> perm(x.rows());
  for (Eigen::Index k = 0; k < x.rows(); ++k) {
    Eigen::Index col = 0;
    x.row(k).maxCoeff(&col);
    perm[k] = static_cast<int>(col);
  }
  return Schedule(std::move(perm));
}

EvalResult evaluate(const Schedule& schedule, const Scenario& scenario,
                    const Instance& instance) {
  const std::size_t n = instance.size();
  if (schedule.size() != n || scenario.p.size() != n) {
    throw std::invalid_argument("schedule/scenario/instance size mismatch");
  }
  EvalResult result;
  result.late_boundary = n + 1;
  result.completions.reserve(n);
  Rational completion;
  for (std::size_t k = 0; k < n; ++k) {
    const int job = schedule[k];
    completion += scenario.p[job];
    result.completions.push_back(completion);
    if (completion > instance.due_date()) {
      if (result.late_boundary == n + 1) result.late_boundary = k + 1;
      result.objective += instance.job(job).weight;
    }
  }
  return result;
}

Rational regret(const Schedule& schedule, const Scenario& scenario,
                const Instance& instance, const Rational& opt_value) {
  return evaluate(schedule, scenario, instance).objective - opt_value;
}

InstanceFormatError::InstanceFormatError(std::size_t line,
                                         const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  return tokens;
}

}  // namespace

Instance read_instance(std::istream& in, std::optional<Rational> epsilon) {
  std::size_t line_no = 0;
  std::size_t n = 0;
  Rational due_date;
  bool have_header = false;
  std::vector<Job> jobs;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto tokens = split_ws(line);
    try {
      if (!have_header) {
        if (tokens.size() != 2) {
          throw InstanceFormatError(line_no, "expected 'n d'");
        }
        const Rational count = parse_rational(tokens[0]);
        if (!is_integer(count) || count < 1) {
          throw InstanceFormatError(line_no, "job count must be positive");
        }
        n = static_cast<std::size_t>(count.numerator());
        due_date = parse_rational(tokens[1]);
        if (due_date <= 0) {
          throw InstanceFormatError(line_no, "due date must be positive");
        }
        have_header = true;
        continue;
      }
      if (jobs.size() == n) {
        throw InstanceFormatError(line_no, "more job lines than declared");
      }
      if (tokens.size() != 3) {
        throw InstanceFormatError(line_no, "expected 'p_min p_max weight'");
      }
      Job job;
      job.id = static_cast<int>(jobs.size());
      job.p_min = parse_rational(tokens[0]);
      job.p_max = parse_rational(tokens[1]);
      job.weight = parse_rational(tokens[2]);
      if (job.p_min < 0 || job.p_max < job.p_min) {
        throw InstanceFormatError(line_no, "need 0 <= p_min <= p_max");
      }
      if (job.weight < 0) throw InstanceFormatError(line_no, "negative weight");
      jobs.push_back(job);
    } catch (const std::invalid_argument& e) {
      throw InstanceFormatError(line_no, e.what());
    }
  }
  // Running out of lines is reported against the line after the last one.
  if (!have_header) {
    throw InstanceFormatError(line_no + 1, "missing 'n d' header");
  }
  if (jobs.size() != n) {
    throw InstanceFormatError(line_no + 1, "expected " + std::to_string(n) +
                                           " job lines, found " +
                                           std::to_string(jobs.size()));
  }
  return Instance(std::move(jobs), due_date, epsilon);
}

Instance load_instance(const std::string& path,
                       std::optional<Rational> epsilon) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_instance(in, epsilon);
}

void write_instance(std::ostream& out, const Instance& instance) {
  out << instance.size() << ' ' << to_string(instance.due_date()) << '\n';
  for (const Job& job : instance.jobs()) {
    out << to_string(job.p_min) << ' ' << to_string(job.p_max) << ' '
        << to_string(job.weight) << '\n';
  }
}

Schedule parse_schedule(std::string_view text, std::size_t n) {
  std::vector<int> perm;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto tok = text.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    const std::int64_t job = parse_int64(tok);
    if (job < 1 || static_cast<std::size_t>(job) > n) {
      throw std::invalid_argument("job index out of range: " +
                                  std::string(tok));
    }
    perm.push_back(static_cast<int>(job - 1));
    start = end + 1;
  }
  if (perm.size() != n) {
    throw std::invalid_argument("schedule must list all " + std::to_string(n) +
                                " jobs");
  }
  return Schedule(std::move(perm));
}

std::string format_schedule(const Schedule& schedule) {
  std::string out;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(schedule[k] + 1);
  }
  return out;
}

}  // namespace mmr
