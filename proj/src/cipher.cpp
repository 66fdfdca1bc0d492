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

#include "pdcbench/cipher.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pdcbench {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace


namespace {

constexpr int kSpeckAlpha = 7;
constexpr int kSpeckBeta = 2;

inline std::uint16_t rotl16(std::uint16_t x, int r) {
  r &= 15;
  return static_cast<std::uint16_t>((x << r) | (x >> ((16 - r) & 15)));
}

inline std::uint16_t rotr16(std::uint16_t x, int r) {
  r &= 15;
  return static_cast<std::uint16_t>((x >> r) | (x << ((16 - r) & 15)));
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

std::string_view to_string(CipherFamily f) { return f == CipherFamily::spn ? "spn" : "arx"; }

std::vector<int> default_pbox() {
  std::vector<int> p(16);
  for (int i = 0; i < 16; ++i) p[static_cast<std::size_t>(i)] = 4 * (i % 4) + i / 4;
  return p;
}

std::vector<int> identity_pbox() {
  std::vector<int> p(16);
  for (int i = 0; i < 16; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

std::array<std::uint8_t, 16> identity_sbox() {
  std::array<std::uint8_t, 16> s{};
  for (std::uint8_t i = 0; i < 16; ++i) s[i] = i;
  return s;
}

std::uint16_t spn_round_constant(int i) { return static_cast<std::uint16_t>((0x9E37U * static_cast<unsigned>(i)) & 0xFFFFU); }

CipherSpec CipherSpec::spn(int rounds) { return spn(rounds, kDefaultSbox, default_pbox()); }

CipherSpec CipherSpec::spn(int rounds, const std::array<std::uint8_t, 16>& sbox, std::vector<int> pbox) {
  CipherSpec s;
  s.family = CipherFamily::spn;
  s.rounds = rounds;
  s.sbox = sbox;
  s.pbox = std::move(pbox);
  s.validate();
  return s;
}

CipherSpec CipherSpec::arx(int rounds) {
  CipherSpec s;
  s.family = CipherFamily::arx;
  s.rounds = rounds;
  s.sbox = {};
  s.pbox = {};
  s.validate();
  return s;
}

void CipherSpec::validate() const {
  if (rounds < 1) throw std::invalid_argument("CipherSpec: rounds must be >= 1");
  if (family == CipherFamily::arx) {
    if (rounds > 64) throw std::invalid_argument("CipherSpec: arx supports at most 64 rounds");
    return;
  }
  std::array<bool, 16> seen{};
  for (auto v : sbox) {
    if (v > 15 || seen[v]) throw std::invalid_argument("CipherSpec: sbox is not a bijection on 0..15");
    seen[v] = true;
  }
  if (pbox.size() != static_cast<std::size_t>(block_bits())) {
    throw std::invalid_argument("CipherSpec: pbox must have block_bits entries");
  }
  std::vector<bool> used(pbox.size(), false);
  for (int v : pbox) {
    if (v < 0 || v >= block_bits() || used[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("CipherSpec: pbox is not a permutation of 0..block_bits-1");
    }
    used[static_cast<std::size_t>(v)] = true;
  }
}

std::string CipherSpec::to_config() const {
  std::ostringstream out;
  out << "[cipher]\n";
  out << "family = " << to_string(family) << "\n";
  out << "rounds = " << rounds << "\n";
  if (family == CipherFamily::spn) {
    out << "sbox = ";
    for (auto v : sbox) out << "0123456789abcdef"[v];
    out << "\npbox = ";
    for (std::size_t i = 0; i < pbox.size(); ++i) out << (i ? "," : "") << pbox[i];
    out << "\n";
  }
  return out.str();
}

CipherSpec CipherSpec::from_config(const Config& cfg, std::string_view section) {
  auto field = [&](std::string_view key) { return std::string(section) + "." + std::string(key); };
  auto family = cfg.get_or(section, "family", "spn");
  int rounds = static_cast<int>(cfg.get_int_or(section, "rounds", family == "arx" ? 22 : 4));
  try {
    if (family == "arx") return arx(rounds);
    if (family != "spn") throw ConfigError(field("family"), "expected 'spn' or 'arx', got '" + family + "'");
    std::array<std::uint8_t, 16> sbox = kDefaultSbox;
    if (auto text = cfg.find(section, "sbox")) {
      auto digits = trim(*text);
      if (digits.size() != 16) throw ConfigError(field("sbox"), "expected 16 hex digits");
      for (std::size_t i = 0; i < 16; ++i) {
        auto v = BitString::from_hex(std::string_view(&digits[i], 1), 4).to_uint();
        sbox[i] = static_cast<std::uint8_t>(v);
      }
    }
    std::vector<int> pbox = default_pbox();
    if (auto text = cfg.find(section, "pbox")) {
      pbox.clear();
      std::istringstream in(*text);
      std::string item;
      while (std::getline(in, item, ',')) pbox.push_back(std::stoi(trim(item)));
    }
    return spn(rounds, sbox, std::move(pbox));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string(section), e.what());
  }
}

Cipher::Cipher(CipherSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if (spec_.family == CipherFamily::spn) {
    for (std::uint8_t i = 0; i < 16; ++i) inv_sbox_[spec_.sbox[i]] = i;
    for (int i = 0; i < 16; ++i) {
      pbox_[static_cast<std::size_t>(i)] = spec_.pbox[static_cast<std::size_t>(i)];
      inv_pbox_[static_cast<std::size_t>(spec_.pbox[static_cast<std::size_t>(i)])] = i;
    }
  }
}

std::vector<std::uint32_t> Cipher::expand_key(std::uint64_t key) const {
  std::vector<std::uint32_t> rk;
  if (spec_.family == CipherFamily::spn) {
    auto k = static_cast<std::uint16_t>(key & 0xFFFFU);
    rk.resize(static_cast<std::size_t>(spec_.rounds) + 1);
    for (int i = 0; i <= spec_.rounds; ++i) {
      rk[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(rotl16(k, i) ^ spn_round_constant(i));
    }
    return rk;
  }
  // Speck32/64: key words are (l2, l1, l0, k0) from most to least significant.
  std::uint16_t k = static_cast<std::uint16_t>(key & 0xFFFFU);
  std::array<std::uint16_t, 3> l = {static_cast<std::uint16_t>((key >> 16) & 0xFFFFU),
                                    static_cast<std::uint16_t>((key >> 32) & 0xFFFFU),
                                    static_cast<std::uint16_t>((key >> 48) & 0xFFFFU)};
  rk.resize(static_cast<std::size_t>(spec_.rounds));
  for (int i = 0; i < spec_.rounds; ++i) {
    rk[static_cast<std::size_t>(i)] = k;
    std::uint16_t li = l[static_cast<std::size_t>(i % 3)];
    std::uint16_t nl = static_cast<std::uint16_t>((static_cast<std::uint16_t>(k + rotr16(li, kSpeckAlpha))) ^ i);
    k = static_cast<std::uint16_t>(rotl16(k, kSpeckBeta) ^ nl);
    l[static_cast<std::size_t>(i % 3)] = nl;
  }
  return rk;
}

std::uint16_t Cipher::substitute(std::uint16_t x, const std::array<std::uint8_t, 16>& box) const {
  std::uint16_t out = 0;
  for (int n = 0; n < 4; ++n) out |= static_cast<std::uint16_t>(box[(x >> (4 * n)) & 0xF] << (4 * n));
  return out;
}

std::uint16_t Cipher::permute(std::uint16_t x, const std::array<int, 16>& map) const {
  std::uint16_t out = 0;
  for (int i = 0; i < 16; ++i) {
    // Position 0 is the most significant bit.
    if ((x >> (15 - i)) & 1U) out |= static_cast<std::uint16_t>(1U << (15 - map[static_cast<std::size_t>(i)]));
  }
  return out;
}

std::uint16_t Cipher::spn_encrypt(std::uint16_t p, const std::vector<std::uint32_t>& rk) const {
  std::uint16_t s = p;
  for (int r = 0; r < spec_.rounds; ++r) {
    s ^= static_cast<std::uint16_t>(rk[static_cast<std::size_t>(r)]);
    s = substitute(s, spec_.sbox);
    s = permute(s, pbox_);
  }
  return static_cast<std::uint16_t>(s ^ rk[static_cast<std::size_t>(spec_.rounds)]);
}

std::uint16_t Cipher::spn_decrypt(std::uint16_t c, const std::vector<std::uint32_t>& rk) const {
  std::uint16_t s = static_cast<std::uint16_t>(c ^ rk[static_cast<std::size_t>(spec_.rounds)]);
  for (int r = spec_.rounds - 1; r >= 0; --r) {
    s = permute(s, inv_pbox_);
    s = substitute(s, inv_sbox_);
    s ^= static_cast<std::uint16_t>(rk[static_cast<std::size_t>(r)]);
  }
  return s;
}

std::uint64_t Cipher::encrypt_block(std::uint64_t p, const std::vector<std::uint32_t>& rk) const {
  if (spec_.family == CipherFamily::spn) return spn_encrypt(static_cast<std::uint16_t>(p), rk);
  auto x = static_cast<std::uint16_t>((p >> 16) & 0xFFFFU);
  auto y = static_cast<std::uint16_t>(p & 0xFFFFU);
  for (auto k : rk) {
    x = static_cast<std::uint16_t>(static_cast<std::uint16_t>(rotr16(x, kSpeckAlpha) + y) ^ k);
    y = static_cast<std::uint16_t>(rotl16(y, kSpeckBeta) ^ x);
  }
  return (static_cast<std::uint64_t>(x) << 16) | y;
}

std::uint64_t Cipher::decrypt_block(std::uint64_t c, const std::vector<std::uint32_t>& rk) const {
  if (spec_.family == CipherFamily::spn) return spn_decrypt(static_cast<std::uint16_t>(c), rk);
  auto x = static_cast<std::uint16_t>((c >> 16) & 0xFFFFU);
  auto y = static_cast<std::uint16_t>(c & 0xFFFFU);
  for (auto it = rk.rbegin(); it != rk.rend(); ++it) {
    y = rotr16(static_cast<std::uint16_t>(y ^ x), kSpeckBeta);
    x = rotl16(static_cast<std::uint16_t>(static_cast<std::uint16_t>(x ^ *it) - y), kSpeckAlpha);
  }
  return (static_cast<std::uint64_t>(x) << 16) | y;
}

std::uint64_t Cipher::encrypt_block(std::uint64_t p, std::uint64_t key) const { return encrypt_block(p, expand_key(key)); }

std::uint64_t Cipher::decrypt_block(std::uint64_t c, std::uint64_t key) const { return decrypt_block(c, expand_key(key)); }

namespace {

void check_lengths(const Cipher& c, const BitString& text, const BitString& key, bool multi) {
  auto bb = static_cast<std::size_t>(c.block_bits());
  if (key.size() != static_cast<std::size_t>(c.key_bits())) {
    throw std::invalid_argument("cipher: key must be " + std::to_string(c.key_bits()) + " bits, got " +
                                std::to_string(key.size()));
  }
  bool ok = multi ? (!text.empty() && text.size() % bb == 0) : text.size() == bb;
  if (!ok) {
    throw std::invalid_argument("cipher: text length " + std::to_string(text.size()) + " is not " +
                                (multi ? "a positive multiple of " : "") + std::to_string(bb) + " bits");
  }
}

}  // namespace

BitString Cipher::encrypt(const BitString& p, const BitString& k) const {
  check_lengths(*this, p, k, false);
  return BitString::from_uint(encrypt_block(p.to_uint(), k.to_uint()), static_cast<std::size_t>(block_bits()));
}

BitString Cipher::decrypt(const BitString& c, const BitString& k) const {
  check_lengths(*this, c, k, false);
  return BitString::from_uint(decrypt_block(c.to_uint(), k.to_uint()), static_cast<std::size_t>(block_bits()));
}

BitString Cipher::encrypt_ecb(const BitString& p, const BitString& k) const {
  check_lengths(*this, p, k, true);
  auto rk = expand_key(k.to_uint());
  auto blocks = to_blocks(p, block_bits());
  for (auto& b : blocks) b = encrypt_block(b, rk);
  return from_blocks(blocks, block_bits());
}

BitString Cipher::decrypt_ecb(const BitString& c, const BitString& k) const {
  check_lengths(*this, c, k, true);
  return from_blocks(decrypt_ecb_words(to_blocks(c, block_bits()), k.to_uint()), block_bits());
}

std::vector<std::uint64_t> Cipher::decrypt_ecb_words(const std::vector<std::uint64_t>& c, std::uint64_t key) const {
  auto rk = expand_key(key);
  std::vector<std::uint64_t> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = decrypt_block(c[i], rk);
  return out;
}

BitString encrypt(const CipherSpec& spec, const BitString& p, const BitString& k) { return Cipher(spec).encrypt(p, k); }

BitString decrypt(const CipherSpec& spec, const BitString& c, const BitString& k) { return Cipher(spec).decrypt(c, k); }

std::vector<std::uint64_t> to_blocks(const BitString& s, int block_bits) {
  auto bb = static_cast<std::size_t>(block_bits);
  if (s.size() % bb != 0) throw std::invalid_argument("to_blocks: length is not a multiple of the block size");
  std::vector<std::uint64_t> out(s.size() / bb);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.slice(i * bb, bb).to_uint();
  return out;
}

BitString from_blocks(const std::vector<std::uint64_t>& blocks, int block_bits) {
  std::vector<BitString> parts;
  parts.reserve(blocks.size());
  for (auto b : blocks) parts.push_back(BitString::from_uint(b, static_cast<std::size_t>(block_bits)));
  return concat(parts);
}

std::vector<BitString> keyspace_enumerate(const KeySpace& ks, std::uint64_t from, std::uint64_t count) {
  if (ks.key_bits < 1 || ks.key_bits > 64) throw std::invalid_argument("keyspace_enumerate: key_bits must be in 1..64");
  u128 size = static_cast<u128>(1) << ks.key_bits;
  if (static_cast<u128>(from) + count > size) {
    throw std::out_of_range("keyspace_enumerate: range exceeds the key space");
  }
  std::vector<BitString> keys;
  keys.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    keys.push_back(BitString::from_uint(from + i, static_cast<std::size_t>(ks.key_bits)));
  }
  return keys;
}

std::vector<TestVector> read_test_vectors(std::istream& in) {
  std::vector<TestVector> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(t);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(trim(f));
    if (fields.size() != 3) {
      throw std::invalid_argument("test vectors line " + std::to_string(lineno) + ": expected key,plaintext,ciphertext");
    }
    out.push_back({BitString::parse(fields[0]), BitString::parse(fields[1]), BitString::parse(fields[2])});
  }
  return out;
}

void write_test_vectors(std::ostream& out, const std::vector<TestVector>& vectors) {
  for (const auto& v : vectors) {
    out << v.key.to_hex() << "," << v.plaintext.to_hex() << "," << v.ciphertext.to_hex() << "\n";
  }
}

}  // namespace pdcbench
