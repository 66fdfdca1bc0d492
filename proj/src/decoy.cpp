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


#include "pdcbench/decoy.hpp"

#include <stdexcept>

namespace pdcbench {

DecoyTransmission decoy_channel_send(std::span<const std::string> plaintexts, const DecoyOptions& opts,
                                     std::uint64_t seed) {
  const std::size_t n = plaintexts.size();
  if (n < 2) throw std::invalid_argument("decoy_channel_send: need the genuine message and at least one decoy");
  DecoyTransmission tx;
  for (std::size_t i = 0; i < n; ++i) {
    tx.books.push_back(
        bitflip_keygen(opts.alphabet, opts.n_bits, opts.max_strings_per_letter, derive_seed(seed, "decoy.book", i), opts.h));
  }

  std::vector<std::vector<BitString>> streams(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, "decoy.encode", i));
    for (char c : plaintexts[i]) {
      int attempt = 0;
      while (true) {
        auto u = bitflip_encode(tx.books[i], c, rng);
        bool clean = true;
        for (std::size_t j = 0; j < n && clean; ++j) {
          if (j != i && bitflip_decode(tx.books[j], u)) clean = false;
        }
        if (clean) {
          streams[i].push_back(std::move(u));
          break;
        }
        ++tx.reencoded;
        if (++attempt >= kRetryBudget) {
          throw std::runtime_error("decoy_channel_send: cannot sanitize a unit of message " + std::to_string(i + 1));
        }
      }
    }
  }

  // Uniformly random interleaving: take from stream i with probability
  // proportional to what it has left.
  Rng rng(derive_seed(seed, "decoy.merge"));
  std::vector<std::size_t> next(n, 0);
  std::size_t left = 0;
  for (const auto& s : streams) left += s.size();
  tx.units.reserve(left);
  while (left > 0) {
    auto pick = uniform_below(rng, left);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t rem = streams[i].size() - next[i];
      if (pick < rem) {
        tx.units.push_back(streams[i][next[i]++]);
        break;
      }
      pick -= rem;
    }
    --left;
  }
  return tx;
}

std::string decoy_channel_recv(const BitFlipKeyBook& book, std::span<const BitString> units) {
  return bitflip_decode_message(book, units);
}

}  // namespace pdcbench
