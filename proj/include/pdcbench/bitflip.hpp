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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdcbench/bitstring.hpp"
#include "pdcbench/rng.hpp"

namespace pdcbench {

/// Rejection-sampling loops in the PDC ciphers give up after this many tries.
inline constexpr int kRetryBudget = 10000;

/// Secret material of a BitFlip channel: every letter owns one or more key
/// strings, all n_bits long and all distinct. A transmitted string means
/// letter `a` when it sits at Hamming distance h from a key string of `a`
/// and from no key string of any other letter.
struct BitFlipKeyBook {
  /// Ordered symbols; ' ' is a valid symbol.
  std::string alphabet;
  std::map<char, std::vector<BitString>> strings;
  int n_bits = 0;
  int h = 0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  std::size_t total_strings() const;
  bool contains(char sym) const { return strings.contains(sym); }
};

/// Book from explicit strings; h defaults to n_bits / 2.
BitFlipKeyBook make_keybook(const std::map<char, std::vector<BitString>>& strings, std::optional<int> h = std::nullopt);

/// Each letter gets a seeded-random count in [1, max_strings_per_letter] of
/// fresh random strings.
BitFlipKeyBook bitflip_keygen(std::string_view alphabet, int n_bits, int max_strings_per_letter, std::uint64_t seed,
                              std::optional<int> h = std::nullopt);

/// Random string at distance h from a random key string of `sym` that passes
/// the confusion test against every other letter. Throws std::runtime_error
/// when the retry budget runs out (over-dense book).
BitString bitflip_encode(const BitFlipKeyBook& book, char sym, Rng& rng);
BitString bitflip_encode(const BitFlipKeyBook& book, char sym, std::uint64_t seed);

/// The letter the string stands for, or nullopt for noise and ambiguous
/// strings. Throws on a length mismatch.
std::optional<char> bitflip_decode(const BitFlipKeyBook& book, const BitString& s);

/// True when s is at distance h from no key string at all.
bool bitflip_is_noise(const BitFlipKeyBook& book, const BitString& s);

/// Random string that bitflip_is_noise accepts.
BitString bitflip_noise(const BitFlipKeyBook& book, Rng& rng);
BitString bitflip_noise(const BitFlipKeyBook& book, std::uint64_t seed);

/// Encodes every letter of `text` and mixes in noise units so that on
/// average a fraction `noise_rate` (in [0, 1)) of the stream is noise.
std::vector<BitString> bitflip_encode_message(const BitFlipKeyBook& book, std::string_view text, double noise_rate,
                                              std::uint64_t seed);
/// Decodes each unit and keeps the letters, dropping everything else.
std::string bitflip_decode_message(const BitFlipKeyBook& book, std::span<const BitString> units);

}  // namespace pdcbench
