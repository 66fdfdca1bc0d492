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


// Independent reference implementations for tests. They work on plain
// '0'/'1' strings and small integer arrays and share no code with the
// library.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

using Bits = std::string;  // '0'/'1', most significant first

Bits bits_of(std::uint64_t v, int len);
std::uint64_t value_of(const Bits& b);

int hamming(const Bits& x, const Bits& y);
/// Full (n+1)x(m+1) table.
int levenshtein(const Bits& x, const Bits& y);
int lcs(const Bits& x, const Bits& y);
double jaccard(const Bits& x, const Bits& y);
double cosine(const Bits& x, const Bits& y);
double euclidean(const Bits& x, const Bits& y);
double manhattan(const Bits& x, const Bits& y);

/// Majority per group of q, leftover group by its own majority, tie -> 0.
Bits q_summarize(const Bits& s, int q);
struct QDist {
  int value;
  bool finite;
};
QDist q_summary_distance(Bits x, Bits y, int q);

/// Pascal triangle.
std::uint64_t binomial(int n, int k);

/// Bit-array SPN: XOR round key, sbox on each nibble, move bit i to
/// 4*(i%4) + i/4; final whitening. rk_i = rotl16(K, i) ^ (0x9E37 * i mod 2^16).
std::uint16_t spn_encrypt(std::uint16_t p, std::uint16_t k, int rounds, const int sbox[16], const int pbox[16]);
extern const int kPresentSbox[16];
extern const int kSpnPbox[16];

/// Speck32/64 from the designers' description; key = (l2, l1, l0, k0).
std::uint32_t speck32_encrypt(std::uint32_t pt, std::uint64_t key, int rounds);

/// KL(w || uniform) in bits.
double kl_uniform_bits(const std::vector<double>& w);
/// Spearman with average ranks, O(n^2).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace oracle
