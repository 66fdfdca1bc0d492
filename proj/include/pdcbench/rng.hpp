// Copyright 2026 The pdcbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <unordered_map>

#include "pdcbench/bitstring.hpp"

namespace pdcbench {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Keyed derivation of a child seed from a master seed and a label. Adding
/// new labels never changes the seeds of existing ones.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index);

/// Uniform integer in [0, n). n > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BitString random_bits(Rng& rng, std::size_t len);

/// Uniformly random permutation of [0, n) produced one element at a time by
/// a lazy Fisher-Yates shuffle. Memory grows with the number of draws, not
/// with n, so it works for 64-bit index spaces.
class LazyPermutation {
 public:
  /// n == 0 denotes the full 2^64 range.
  LazyPermutation(std::uint64_t n, std::uint64_t seed);

  bool exhausted() const noexcept { return n_ != 0 && drawn_ >= n_; }
  std::uint64_t drawn() const noexcept { return drawn_; }
  std::uint64_t next();

 private:
  std::uint64_t at(std::uint64_t i) const;

  std::uint64_t n_;
  std::uint64_t drawn_ = 0;
  Rng rng_;
  std::unordered_map<std::uint64_t, std::uint64_t> swapped_;
};

}  // namespace pdcbench
