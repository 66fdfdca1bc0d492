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


#include "pdcbench/search.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "pdcbench/analysis.hpp"
#include "pdcbench/parallel.hpp"
#include "pdcbench/rng.hpp"
#include "textio.hpp"

namespace pdcbench {

void SearchState::record(std::uint64_t key, double score) {
  if (!seen_.insert(key).second) {
    throw std::logic_error("key " + key_string(key).to_hex() + " was already tried");
  }
  tried_.push_back({key, score});
}

void SearchState::set_found(std::uint64_t key, BitString plaintext) {
  if (found_) throw std::logic_error("search result already set");
  found_ = Found{key, std::move(plaintext)};
}

SearchState blind_bruteforce(const CipherSpec& spec, const BitString& c, const StopPredicate& stop, SearchOrder order,
                             std::uint64_t budget, std::uint64_t seed) {
  if (budget == 0) throw std::invalid_argument("blind_bruteforce: budget must be >= 1");
  Cipher cipher(spec);
  const int bb = cipher.block_bits();
  auto blocks = to_blocks(c, bb);
  const std::uint64_t n = KeySpace{cipher.key_bits()}.size();
  SearchState st(cipher.key_bits());
  LazyPermutation perm(n, seed);
  std::uint64_t next_sequential = 0;
  for (std::uint64_t i = 0; i < budget; ++i) {
    if (n != 0 && i >= n) break;
    std::uint64_t key = order == SearchOrder::sequential ? next_sequential++ : perm.next();
    auto p = from_blocks(cipher.decrypt_ecb_words(blocks, key), bb);
    bool hit = stop(p);
    st.record(key, hit ? 1.0 : 0.0);
    if (hit) {
      st.set_found(key, std::move(p));
      break;
    }
  }
  return st;
}

namespace {

double min_candidate_distance(const MetricId& metric, const BitString& p, const PlausibleSet& plausible) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& cand : plausible.candidates) {
    auto d = dataset_distance(metric, p, cand);
    if (!std::isnan(d.value)) best = std::min(best, d.value);
  }
  return best;
}

void check_candidates(const BitString& c_q, const PlausibleSet& plausible, const MetricId& metric) {
  if (plausible.candidates.empty()) throw std::invalid_argument("plausible set is empty");
  if (!metric.positional()) return;
  for (const auto& cand : plausible.candidates) {
    if (cand.size() != c_q.size()) {
      throw std::invalid_argument("candidate length " + std::to_string(cand.size()) + " differs from ciphertext length " +
                                  std::to_string(c_q.size()) + " under metric " + metric.name());
    }
  }
}

// Distances aligned with `keys`.
std::vector<double> score_keys(const Cipher& cipher, const std::vector<std::uint64_t>& blocks,
                               std::span<const std::uint64_t> keys, const PlausibleSet& plausible,
                               const MetricId& metric, std::size_t workers) {
  std::vector<double> out(keys.size());
  parallel_for(keys.size(), workers, [&](std::size_t i) {
    auto p = from_blocks(cipher.decrypt_ecb_words(blocks, keys[i]), cipher.block_bits());
    out[i] = min_candidate_distance(metric, p, plausible);
  });
  return out;
}

RankedKeys sort_ranked(int key_bits, std::span<const std::uint64_t> keys, const std::vector<double>& dist) {
  RankedKeys r;
  r.key_bits = key_bits;
  r.ordered.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) r.ordered.push_back({keys[i], dist[i]});
  std::sort(r.ordered.begin(), r.ordered.end(), [](const RankedKey& a, const RankedKey& b) {
    if (a.min_distance != b.min_distance) return a.min_distance < b.min_distance;
    return a.key < b.key;
  });
  return r;
}

}  // namespace

RankedKeys rank_trial_keys(const Cipher& cipher, const BitString& c_q, std::span<const std::uint64_t> keys,
                           const PlausibleSet& plausible, const MetricId& metric, std::size_t workers) {
  if (keys.empty()) throw std::invalid_argument("rank_trial_keys: no keys");
  check_candidates(c_q, plausible, metric);
  auto blocks = to_blocks(c_q, cipher.block_bits());
  return sort_ranked(cipher.key_bits(), keys, score_keys(cipher, blocks, keys, plausible, metric, workers));
}

RankedKeys rank_trial_keys(const CipherSpec& spec, const BitString& c_q, std::span<const BitString> keys,
                           const PlausibleSet& plausible, const MetricId& metric) {
  Cipher cipher(spec);
  std::vector<std::uint64_t> words;
  words.reserve(keys.size());
  for (const auto& k : keys) {
    if (k.size() != static_cast<std::size_t>(cipher.key_bits())) throw std::invalid_argument("rank_trial_keys: key length");
    words.push_back(k.to_uint());
  }
  return rank_trial_keys(cipher, c_q, words, plausible, metric);
}

SearchState ai2_search(const CipherSpec& spec, const BitString& c_q, const PlausibleSet& plausible,
                       const MetricId& metric, Ranker& ranker, const Ai2Options& opts) {
  if (opts.t == 0) throw std::invalid_argument("ai2_search: t must be >= 1");
  if (opts.max_rounds < 1) throw std::invalid_argument("ai2_search: max_rounds must be >= 1");
  check_candidates(c_q, plausible, metric);
  for (const auto& m : opts.fallback_metrics) check_candidates(c_q, plausible, m);

  Cipher cipher(spec);
  const int kb = cipher.key_bits();
  const int bb = cipher.block_bits();
  const std::uint64_t n = KeySpace{kb}.size();
  const auto blocks = to_blocks(c_q, bb);
  const auto& lm = lang::LanguageModel::english();
  const double theta = std::isnan(opts.theta) ? lang::default_threshold() : opts.theta;

  std::vector<MetricId> rotation{metric};
  rotation.insert(rotation.end(), opts.fallback_metrics.begin(), opts.fallback_metrics.end());
  std::size_t metric_pos = 0;

  SearchState st(kb);
  ranker.reset(kb, derive_seed(opts.seed, "ai2.ranker"));

  std::vector<std::uint64_t> batch;
  {
    LazyPermutation perm(n, derive_seed(opts.seed, "ai2.round0"));
    while (batch.size() < opts.t && !perm.exhausted()) batch.push_back(perm.next());
  }

  double best = std::numeric_limits<double>::infinity();
  int stagnant = 0;
  for (int round = 0; round < opts.max_rounds && !batch.empty(); ++round) {
    {
      std::unordered_set<std::uint64_t> in_batch;
      for (auto k : batch) {
        if (st.has_tried(k) || !in_batch.insert(k).second) {
          throw std::logic_error("ranker '" + ranker.name() + "' proposed already tried key " + st.key_string(k).to_hex());
        }
      }
    }
    const MetricId& current = rotation[metric_pos];
    auto dist = score_keys(cipher, blocks, batch, plausible, current, opts.workers);

    std::size_t used = batch.size();
    for (std::size_t i = 0; i < batch.size(); ++i) {
      st.record(batch[i], dist[i]);
      if (dist[i] != 0.0) continue;
      auto p = from_blocks(cipher.decrypt_ecb_words(blocks, batch[i]), bb);
      bool exact = std::find(plausible.candidates.begin(), plausible.candidates.end(), p) != plausible.candidates.end();
      if (exact && (opts.known_plaintext || lang::is_plausible(lm, lang::letter_payload(p), theta))) {
        st.set_found(batch[i], std::move(p));
        used = i + 1;
        break;
      }
    }
    std::span<const std::uint64_t> seen(batch.data(), used);
    double batch_min = *std::min_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(used));
    if (batch_min < best) {
      best = batch_min;
      stagnant = 0;
    } else {
      ++stagnant;
    }
    ranker.observe(sort_ranked(kb, seen, std::vector<double>(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(used))),
                   round);

    TraceRow row;
    row.round = round;
    row.keys_tried_cum = st.keys_tried();
    row.best_min_distance = best;
    row.batch_min_distance = batch_min;
    row.metric = current.name();
    if (opts.track_spikedness && n != 0 && KeySpace{kb}.enumerable() && st.keys_tried() < n) {
      std::vector<std::uint64_t> untried;
      untried.reserve(n - st.keys_tried());
      for (std::uint64_t k = 0; k < n; ++k) {
        if (!st.has_tried(k)) untried.push_back(k);
      }
      auto w = ranker.weights(untried);
      row.spikedness = spikedness(w);
      st.set_remaining_weights(std::move(w));
    }
    st.trace().push_back(row);
    if (st.found()) break;

    if (rotation.size() > 1 && stagnant >= opts.stagnation_rounds) {
      // Switch metric and re-score everything tried so far on the new scale.
      metric_pos = (metric_pos + 1) % rotation.size();
      std::vector<std::uint64_t> all;
      all.reserve(st.tried().size());
      for (const auto& tr : st.tried()) all.push_back(tr.key);
      auto rescored = score_keys(cipher, blocks, all, plausible, rotation[metric_pos], opts.workers);
      ranker.observe(sort_ranked(kb, all, rescored), round);
      best = *std::min_element(rescored.begin(), rescored.end());
      stagnant = 0;
    }
    batch = ranker.propose(opts.t);
  }
  return st;
}

void write_trace_csv(std::ostream& out, const SearchState& s, const std::vector<std::string>& meta) {
  detail::write_meta(out, meta);
  out << "round,keys_tried_cum,best_min_distance,spikedness,metric_id,batch_min_distance\n";
  for (const auto& r : s.trace()) {
    out << r.round << "," << r.keys_tried_cum << "," << detail::real(r.best_min_distance) << ","
        << detail::real(r.spikedness) << "," << r.metric << "," << detail::real(r.batch_min_distance) << "\n";
  }
}

}  // namespace pdcbench
