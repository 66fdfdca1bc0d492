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
#include <span>
#include <string>
#include <vector>

#include "pdcbench/bitflip.hpp"

namespace pdcbench {

struct DecoyOptions {
  std::string alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ ";
  int n_bits = 64;
  int h = 16;
  int max_strings_per_letter = 3;
};

struct DecoyTransmission {
  /// books[0] belongs to the genuine message, the rest to the decoys.
  std::vector<BitFlipKeyBook> books;
  /// The combined ciphertext CC.
  std::vector<BitString> units;
  /// Units re-encoded because another book read them as a letter.
  std::size_t reencoded = 0;
};

/// Encrypts plaintexts[i] under its own fresh keybook, re-encodes any unit
/// that some other book would read as a letter, and interleaves the streams
/// in a seeded-random order that keeps each stream's own order.
DecoyTransmission decoy_channel_send(std::span<const std::string> plaintexts, const DecoyOptions& opts,
                                     std::uint64_t seed);

/// What a holder of `book` reads from CC.
std::string decoy_channel_recv(const BitFlipKeyBook& book, std::span<const BitString> units);

}  // namespace pdcbench
