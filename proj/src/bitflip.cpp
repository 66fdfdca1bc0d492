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


#include "pdcbench/bitflip.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "pdcbench/metrics.hpp"

namespace pdcbench {

namespace {

// h distinct positions chosen uniformly, flipped in a copy of k.
BitString flip_random_positions(const BitString& k, int h, Rng& rng) {
  std::vector<std::size_t> pos(k.size());
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::vector<std::uint8_t> bits(k.bits().begin(), k.bits().end());
  for (int i = 0; i < h; ++i) {
    auto j = static_cast<std::size_t>(i) + uniform_below(rng, pos.size() - static_cast<std::size_t>(i));
    std::swap(pos[static_cast<std::size_t>(i)], pos[j]);
    bits[pos[static_cast<std::size_t>(i)]] ^= 1U;
  }
  return BitString(std::move(bits));
}

}  // namespace

void BitFlipKeyBook::validate() const {
  if (n_bits < 2) throw std::invalid_argument("keybook: n_bits must be >= 2");
  if (h <= 0 || h >= n_bits) throw std::invalid_argument("keybook: h must satisfy 0 < h < n_bits");
  if (alphabet.empty()) throw std::invalid_argument("keybook: empty alphabet");
  std::set<char> letters(alphabet.begin(), alphabet.end());
  if (letters.size() != alphabet.size()) throw std::invalid_argument("keybook: repeated symbol in alphabet");
  if (strings.size() != alphabet.size()) throw std::invalid_argument("keybook: string map does not match alphabet");
  std::set<BitString> all;
  for (char c : alphabet) {
    auto it = strings.find(c);
    if (it == strings.end() || it->second.empty()) {
      throw std::invalid_argument(std::string("keybook: letter '") + c + "' has no key string");
    }
    for (const auto& s : it->second) {
      if (s.size() != static_cast<std::size_t>(n_bits)) throw std::invalid_argument("keybook: key string length differs from n_bits");
      if (!all.insert(s).second) throw std::invalid_argument("keybook: duplicate key string " + s.to_hex());
    }
  }
}

std::size_t BitFlipKeyBook::total_strings() const {
  std::size_t n = 0;
  for (const auto& [c, v] : strings) n += v.size();
  return n;
}

BitFlipKeyBook make_keybook(const std::map<char, std::vector<BitString>>& strings, std::optional<int> h) {
  BitFlipKeyBook b;
  for (const auto& [c, v] : strings) b.alphabet.push_back(c);
  b.strings = strings;
  b.n_bits = strings.empty() || strings.begin()->second.empty() ? 0 : static_cast<int>(strings.begin()->second[0].size());
  b.h = h.value_or(b.n_bits / 2);
  b.validate();
  return b;
}

BitFlipKeyBook bitflip_keygen(std::string_view alphabet, int n_bits, int max_strings_per_letter, std::uint64_t seed,
                              std::optional<int> h) {
  if (max_strings_per_letter < 1) throw std::invalid_argument("bitflip_keygen: max_strings_per_letter must be >= 1");
  if (n_bits < 2) throw std::invalid_argument("bitflip_keygen: n_bits must be >= 2");
  if (!h && n_bits % 2 != 0) throw std::invalid_argument("bitflip_keygen: n_bits must be even for the default h");
  if (n_bits < 63 && alphabet.size() > (std::uint64_t{1} << n_bits)) {
    throw std::invalid_argument("bitflip_keygen: " + std::to_string(alphabet.size()) + " letters exceed the " +
                                std::to_string(std::uint64_t{1} << n_bits) + " distinct " + std::to_string(n_bits) +
                                "-bit strings");
  }
  BitFlipKeyBook b;
  b.alphabet = std::string(alphabet);
  b.n_bits = n_bits;
  b.h = h.value_or(n_bits / 2);
  b.seed = seed;
  Rng rng(seed);
  std::set<BitString> used;
  for (char c : alphabet) {
    auto count = 1 + uniform_below(rng, static_cast<std::uint64_t>(max_strings_per_letter));
    auto& list = b.strings[c];
    for (std::uint64_t i = 0; i < count; ++i) {
      int tries = 0;
      BitString s;
      do {
        if (++tries > kRetryBudget) throw std::runtime_error("bitflip_keygen: cannot find distinct key strings");
        s = random_bits(rng, static_cast<std::size_t>(n_bits));
      } while (used.contains(s));
      used.insert(s);
      list.push_back(std::move(s));
    }
  }
  b.validate();
  return b;
}

BitString bitflip_encode(const BitFlipKeyBook& book, char sym, Rng& rng) {
  auto it = book.strings.find(sym);
  if (it == book.strings.end()) throw std::invalid_argument(std::string("bitflip_encode: symbol '") + sym + "' not in alphabet");
  const auto& own = it->second;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const auto& k = own[uniform_below(rng, own.size())];
    auto s = flip_random_positions(k, book.h, rng);
    bool confused = false;
    for (const auto& [other, list] : book.strings) {
      if (other == sym) continue;
      for (const auto& k2 : list) {
        if (hamming(s, k2) == static_cast<std::size_t>(book.h)) {
          confused = true;
          break;
        }
      }
      if (confused) break;
    }
    if (!confused) return s;
  }
  throw std::runtime_error(std::string("bitflip_encode: no confusion-free string for '") + sym +
                           "' within the retry budget; the keybook is too dense");
}

BitString bitflip_encode(const BitFlipKeyBook& book, char sym, std::uint64_t seed) {
  Rng rng(seed);
  return bitflip_encode(book, sym, rng);
}

std::optional<char> bitflip_decode(const BitFlipKeyBook& book, const BitString& s) {
  if (s.size() != static_cast<std::size_t>(book.n_bits)) {
    throw std::invalid_argument("bitflip_decode: expected " + std::to_string(book.n_bits) + " bits, got " +
                                std::to_string(s.size()));
  }
  std::optional<char> hit;
  for (const auto& [c, list] : book.strings) {
    for (const auto& k : list) {
      if (hamming(s, k) == static_cast<std::size_t>(book.h)) {
        if (hit) return std::nullopt;
        hit = c;
        break;
      }
    }
  }
  return hit;
}

bool bitflip_is_noise(const BitFlipKeyBook& book, const BitString& s) {
  for (const auto& [c, list] : book.strings) {
    for (const auto& k : list) {
      if (hamming(s, k) == static_cast<std::size_t>(book.h)) return false;
    }
  }
  return true;
}

BitString bitflip_noise(const BitFlipKeyBook& book, Rng& rng) {
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    auto s = random_bits(rng, static_cast<std::size_t>(book.n_bits));
    if (bitflip_is_noise(book, s)) return s;
  }
  throw std::runtime_error("bitflip_noise: no noise string within the retry budget");
}

BitString bitflip_noise(const BitFlipKeyBook& book, std::uint64_t seed) {
  Rng rng(seed);
  return bitflip_noise(book, rng);
}

std::vector<BitString> bitflip_encode_message(const BitFlipKeyBook& book, std::string_view text, double noise_rate,
                                              std::uint64_t seed) {
  if (!(noise_rate >= 0.0 && noise_rate < 1.0)) throw std::invalid_argument("noise rate must be in [0, 1)");
  Rng rng(seed);
  std::vector<BitString> out;
  auto pad = [&] {
    while (uniform01(rng) < noise_rate) out.push_back(bitflip_noise(book, rng));
  };
  for (char c : text) {
    pad();
    out.push_back(bitflip_encode(book, c, rng));
  }
  pad();
  return out;
}

std::string bitflip_decode_message(const BitFlipKeyBook& book, std::span<const BitString> units) {
  std::string out;
  for (const auto& u : units) {
    if (auto c = bitflip_decode(book, u)) out.push_back(*c);
  }
  return out;
}

}  // namespace pdcbench
