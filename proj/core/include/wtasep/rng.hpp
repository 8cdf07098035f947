// Copyright 2026 The wtasep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace wtasep {

/// SplitMix64 (Steele, Lea, Flood 2014). Used to expand a 64-bit seed into
/// xoshiro state and to derive per-table seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept;

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman, Vigna 2018), state seeded by four SplitMix64
/// outputs. The stream for a given seed is fixed by the published reference
/// algorithm, so permutation tables reproduce across platforms and
/// implementations.
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256StarStar(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  std::uint64_t operator()() noexcept { return next(); }

  /// Uniform integer in [0, bound) by Lemire's multiply-shift with rejection.
  /// bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() noexcept;

  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Seed of the i-th independent table derived from a base seed. Table 0 uses
/// the base seed itself.
std::uint64_t derive_table_seed(std::uint64_t base_seed, std::size_t table_index) noexcept;

}  // namespace wtasep
