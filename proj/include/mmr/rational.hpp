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

#ifndef MMR_RATIONAL_HPP_
#define MMR_RATIONAL_HPP_

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost's mixed rational/int equality forwards to itself once C++20 adds the
// reversed candidates, which recurses forever. Exact-match overloads win.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(std::int64_t b, const rational<std::int64_t>& a) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<std::int64_t>& a, int b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(int b, const rational<std::int64_t>& a) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator!=(const rational<std::int64_t>& a, std::int64_t b) {
  return !(a == b);
}
inline bool operator!=(std::int64_t b, const rational<std::int64_t>& a) {
  return !(a == b);
}
inline bool operator!=(const rational<std::int64_t>& a, int b) {
  return !(a == b);
}
inline bool operator!=(int b, const rational<std::int64_t>& a) {
  return !(a == b);
}
}  // namespace boost

namespace mmr {

/// Exact scalar used for all time and weight data outside the LP engine.
using Rational = boost::rational<std::int64_t>;

/// Parses "a", "-a" or "a/b". Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Formats as "a" when the denominator is 1, else "a/b".
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) {
  return boost::rational_cast<double>(value);
}

inline bool is_integer(const Rational& value) {
  return value.denominator() == 1;
}

/// Least common multiple of denominators, the factor that turns every value
/// into an integer.
template <typename Range>
std::int64_t common_denominator(const Range& values) {
  std::int64_t scale = 1;
  for (const Rational& v : values) scale = std::lcm(scale, v.denominator());
  return scale;
}

/// value * scale, which must be integral.
std::int64_t scaled_integer(const Rational& value, std::int64_t scale);

/// Nearest rational with denominator at most max_denominator (continued
/// fractions). Used to read floating LP values back into exact form.
Rational approximate_rational(double value, std::int64_t max_denominator);

}  // namespace mmr

#endif  // MMR_RATIONAL_HPP_
