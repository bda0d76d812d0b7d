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

#include <cmath>
#include <ostream>
#include <sstream>

#include "mmr/milp.hpp"

namespace mmr::milp {

namespace {

std::string var_name(const MipModel& model, int j) {
  const std::string& name = model.variable(j).name;
  return name.empty() ? "x" + std::to_string(j) : name;
}

std::string number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

// Writes " + 3 x - 2 y" style sums, wrapping long lines.
void write_terms(std::ostream& out, const MipModel& model,
                 const std::vector<Term>& terms) {
  if (terms.empty()) {
    out << " 0 " << var_name(model, 0);
    return;
  }
  int on_line = 0;
  for (const Term& t : terms) {
    out << (t.coef < 0 ? " - " : " + ") << number(std::abs(t.coef)) << ' '
        << var_name(model, t.var);
    if (++on_line == 8) {
      out << "\n   ";
      on_line = 0;
    }
  }
}

}  // namespace

void write_lp_format(std::ostream& out, const MipModel& model) {
  out << "\\ " << model.num_variables() << " variables, "
      << model.num_constraints() << " constraints\n";
  out << (model.sense() == Sense::kMaximize ? "Maximize\n" : "Minimize\n");
  std::vector<Term> objective;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variable(j).objective != 0.0) {
      objective.push_back({j, model.variable(j).objective});
    }
  }
  out << " obj:";
  if (model.num_variables() > 0) write_terms(out, model, objective);
  out << "\nSubject To\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const Constraint& c = model.constraints()[i];
    out << ' ' << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ':';
    write_terms(out, model, c.terms);
    switch (c.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
      case Relation::kEqual: out << " = "; break;
    }
    out << number(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variable(j);
    if (v.is_binary) {
      // Only a fixed binary needs a bound line.
      if (v.lower > 0.0 || v.upper < 1.0) {
        out << ' ' << var_name(model, j) << " = "
            << number(v.lower > 0.0 ? 1.0 : 0.0) << '\n';
      }
      continue;
    }
    out << ' ' << number(v.lower) << " <= " << var_name(model, j) << " <= "
        << (std::isfinite(v.upper) ? number(v.upper) : "+inf") << '\n';
  }
  if (model.num_binaries() > 0) {
    out << "Binaries\n";
    for (int j = 0; j < model.num_variables(); ++j) {
      if (model.variable(j).is_binary) out << ' ' << var_name(model, j) << '\n';
    }
  }
  out << "End\n";
}

}  // namespace mmr::milp
