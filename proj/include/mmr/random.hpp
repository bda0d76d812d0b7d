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

#ifndef MMR_RANDOM_HPP_
#define MMR_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace mmr {

/// Portable random source: std::mt19937_64 seeded with the 64-bit seed
/// directly. The standard distributions are implementation-defined, so the
/// integer and real draws below are spelled out to keep streams identical
/// across compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [lo, hi], inclusive, by rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  bool bernoulli(double p) { return uniform_real() < p; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer over (base, stream); used to derive per-instance and
/// per-run seeds from one experiment seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace mmr

#endif  // MMR_RANDOM_HPP_
