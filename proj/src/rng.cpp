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

#include "pdcbench/rng.hpp"

#include <stdexcept>
#include <vector>

namespace pdcbench {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return splitmix64(splitmix64(master) ^ h);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index) {
  return splitmix64(derive_seed(master, label) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  // Rejection sampling keeps the result unbiased and independent of the
  // standard library's distribution implementation.
  std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  for (;;) {
    std::uint64_t r = rng();
    if (r < limit) return r % n;
  }
}

BitString random_bits(Rng& rng, std::size_t len) {
  std::vector<std::uint8_t> bits(len);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
  }
  return BitString(std::move(bits));
}

LazyPermutation::LazyPermutation(std::uint64_t n, std::uint64_t seed) : n_(n), rng_(seed) {}

std::uint64_t LazyPermutation::at(std::uint64_t i) const {
  auto it = swapped_.find(i);
  return it == swapped_.end() ? i : it->second;
}

std::uint64_t LazyPermutation::next() {
  if (exhausted()) throw std::out_of_range("LazyPermutation: exhausted");
  std::uint64_t remaining = n_ == 0 ? UINT64_MAX - drawn_ : n_ - drawn_;
  std::uint64_t j = drawn_ + uniform_below(rng_, remaining);
  std::uint64_t vi = at(drawn_);
  std::uint64_t vj = at(j);
  swapped_[j] = vi;
  swapped_.erase(drawn_);
  ++drawn_;
  return vj;
}

}  // namespace pdcbench
