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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pdcbench/bitstring.hpp"
#include "pdcbench/config.hpp"

namespace pdcbench {

enum class CipherFamily : std::uint8_t { spn, arx };

std::string_view to_string(CipherFamily f);

/// Public description of a toy target cipher.
///
/// spn: 16-bit block, 16-bit key. Each round XORs a round key, applies the
/// 4-bit sbox to the four nibbles and then the bit permutation; a final
/// round key is XORed after the last round. Round key i is
/// rotl16(K, i) ^ spn_round_constant(i).
///
/// arx: Speck32/64 with a configurable number of rounds (22 is the full
/// cipher).
struct CipherSpec {
  CipherFamily family = CipherFamily::spn;
  int rounds = 4;
  /// spn only: sbox[x] for x in 0..15.
  std::array<std::uint8_t, 16> sbox{};
  /// spn only: bit at position i (0 = most significant) moves to pbox[i].
  std::vector<int> pbox;

  int block_bits() const noexcept { return family == CipherFamily::spn ? 16 : 32; }
  int key_bits() const noexcept { return family == CipherFamily::spn ? 16 : 64; }

  static CipherSpec spn(int rounds);
  static CipherSpec spn(int rounds, const std::array<std::uint8_t, 16>& sbox, std::vector<int> pbox);
  static CipherSpec arx(int rounds = 22);

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  /// "[cipher]" block with family, rounds, sbox (16 hex digits) and pbox
  /// (comma separated positions).
  std::string to_config() const;
  static CipherSpec from_config(const Config& cfg, std::string_view section = "cipher");

  friend bool operator==(const CipherSpec&, const CipherSpec&) = default;
};

inline constexpr std::array<std::uint8_t, 16> kDefaultSbox = {0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD,
                                                               0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2};
/// Nibble transpose: bit j of nibble i moves to bit i of nibble j.
std::vector<int> default_pbox();
std::vector<int> identity_pbox();
std::array<std::uint8_t, 16> identity_sbox();

std::uint16_t spn_round_constant(int i);

/// Compiled form of a CipherSpec: lookup tables are built once, block
/// operations work on machine words. Immutable and thread safe.
class Cipher {
 public:
  explicit Cipher(CipherSpec spec);

  const CipherSpec& spec() const noexcept { return spec_; }
  int block_bits() const noexcept { return spec_.block_bits(); }
  int key_bits() const noexcept { return spec_.key_bits(); }

  /// Round keys for `key`; reusing them avoids re-running the schedule.
  std::vector<std::uint32_t> expand_key(std::uint64_t key) const;

  std::uint64_t encrypt_block(std::uint64_t p, std::uint64_t key) const;
  std::uint64_t decrypt_block(std::uint64_t c, std::uint64_t key) const;
  std::uint64_t encrypt_block(std::uint64_t p, const std::vector<std::uint32_t>& round_keys) const;
  std::uint64_t decrypt_block(std::uint64_t c, const std::vector<std::uint32_t>& round_keys) const;

  /// Single block: p.size() == block_bits, k.size() == key_bits.
  BitString encrypt(const BitString& p, const BitString& k) const;
  BitString decrypt(const BitString& c, const BitString& k) const;

  /// Independent blocks (ECB). Length must be a positive multiple of
  /// block_bits.
  BitString encrypt_ecb(const BitString& p, const BitString& k) const;
  BitString decrypt_ecb(const BitString& c, const BitString& k) const;
  std::vector<std::uint64_t> decrypt_ecb_words(const std::vector<std::uint64_t>& c, std::uint64_t key) const;

 private:
  std::uint16_t spn_encrypt(std::uint16_t p, const std::vector<std::uint32_t>& rk) const;
  std::uint16_t spn_decrypt(std::uint16_t c, const std::vector<std::uint32_t>& rk) const;
  std::uint16_t permute(std::uint16_t x, const std::array<int, 16>& map) const;
  std::uint16_t substitute(std::uint16_t x, const std::array<std::uint8_t, 16>& box) const;

  CipherSpec spec_;
  std::array<std::uint8_t, 16> inv_sbox_{};
  std::array<int, 16> pbox_{};
  std::array<int, 16> inv_pbox_{};
};

BitString encrypt(const CipherSpec& spec, const BitString& p, const BitString& k);
BitString decrypt(const CipherSpec& spec, const BitString& c, const BitString& k);

/// Splits a bit string into block-sized words and back.
std::vector<std::uint64_t> to_blocks(const BitString& s, int block_bits);
BitString from_blocks(const std::vector<std::uint64_t>& blocks, int block_bits);

struct KeySpace {
  int key_bits = 16;

  /// 2^key_bits, or 0 to denote 2^64.
  std::uint64_t size() const noexcept { return key_bits >= 64 ? 0 : (std::uint64_t{1} << key_bits); }
  bool enumerable(int limit_bits = 24) const noexcept { return key_bits <= limit_bits; }
};

/// Keys for indices [from, from + count) in counting order.
std::vector<BitString> keyspace_enumerate(const KeySpace& ks, std::uint64_t from, std::uint64_t count);

struct TestVector {
  BitString key;
  BitString plaintext;
  BitString ciphertext;
};

/// Lines of "key,plaintext,ciphertext" in length-annotated hex. Blank lines
/// and '#' comments are skipped.
std::vector<TestVector> read_test_vectors(std::istream& in);
void write_test_vectors(std::ostream& out, const std::vector<TestVector>& vectors);

}  // namespace pdcbench
