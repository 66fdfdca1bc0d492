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
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "pdcbench/bitstring.hpp"
#include "pdcbench/cipher.hpp"
#include "pdcbench/lang.hpp"
#include "pdcbench/metrics.hpp"

namespace pdcbench {

/// Keys are carried as integers (key_bits <= 64); `key_string` converts.
struct TrialRecord {
  std::uint64_t key = 0;
  double score = 0.0;
};

struct TraceRow {
  int round = 0;
  std::uint64_t keys_tried_cum = 0;
  /// Best distance seen so far in the run.
  double best_min_distance = 0.0;
  double spikedness = 0.0;
  std::string metric;
  /// Best distance within this round's batch alone.
  double batch_min_distance = 0.0;
};

struct Found {
  std::uint64_t key = 0;
  BitString plaintext;
};

class SearchState {
 public:
  explicit SearchState(int key_bits = 16) : key_bits_(key_bits) {}

  int key_bits() const noexcept { return key_bits_; }
  const std::vector<TrialRecord>& tried() const noexcept { return tried_; }
  std::uint64_t keys_tried() const noexcept { return tried_.size(); }
  bool has_tried(std::uint64_t key) const { return seen_.contains(key); }
  /// Throws std::logic_error if the key was tried before.
  void record(std::uint64_t key, double score);

  const std::optional<Found>& found() const noexcept { return found_; }
  /// Throws std::logic_error if already set.
  void set_found(std::uint64_t key, BitString plaintext);

  /// Explicit weights over the untried keys of an enumerable space, as left
  /// by the last round that tracked them.
  const std::optional<std::vector<double>>& remaining_weights() const noexcept { return weights_; }
  void set_remaining_weights(std::vector<double> w) { weights_ = std::move(w); }

  std::vector<TraceRow>& trace() noexcept { return trace_; }
  const std::vector<TraceRow>& trace() const noexcept { return trace_; }

  BitString key_string(std::uint64_t key) const { return BitString::from_uint(key, static_cast<std::size_t>(key_bits_)); }

 private:
  int key_bits_;
  std::vector<TrialRecord> tried_;
  std::unordered_set<std::uint64_t> seen_;
  std::optional<Found> found_;
  std::optional<std::vector<double>> weights_;
  std::vector<TraceRow> trace_;
};

using StopPredicate = std::function<bool(const BitString& plaintext)>;

enum class SearchOrder : std::uint8_t { sequential, seeded_random };

/// Tries keys until stop(decrypt(c, k)) holds or `budget` keys were tried.
/// c may span several blocks (ECB).
SearchState blind_bruteforce(const CipherSpec& spec, const BitString& c, const StopPredicate& stop, SearchOrder order,
                             std::uint64_t budget, std::uint64_t seed = 0);

/// Candidate plaintexts for one captured ciphertext.
struct PlausibleSet {
  std::uint64_t ciphertext_id = 0;
  std::vector<BitString> candidates;
};

struct RankedKey {
  std::uint64_t key = 0;
  double min_distance = 0.0;
};

/// Ascending by min_distance, ties by key value.
struct RankedKeys {
  int key_bits = 16;
  std::vector<RankedKey> ordered;
};

/// Decrypts c_q under every key and scores it by its smallest distance to
/// any candidate. Undefined distances count as +infinity.
RankedKeys rank_trial_keys(const Cipher& cipher, const BitString& c_q, std::span<const std::uint64_t> keys,
                           const PlausibleSet& plausible, const MetricId& metric, std::size_t workers = 1);
RankedKeys rank_trial_keys(const CipherSpec& spec, const BitString& c_q, std::span<const BitString> keys,
                           const PlausibleSet& plausible, const MetricId& metric);

/// Learner contract for the accelerated search. observe() may be called
/// again for a key already seen, in which case the new distance replaces the
/// old one (used when the search switches metric).
class Ranker {
 public:
  virtual ~Ranker() = default;
  virtual std::string name() const = 0;
  /// Clears all state for a new run over a key space of `key_bits` bits.
  virtual void reset(int key_bits, std::uint64_t seed) = 0;
  virtual void observe(const RankedKeys& omega, int round) = 0;
  /// Up to t keys never observed before. Empty means nothing left to offer.
  virtual std::vector<std::uint64_t> propose(std::size_t t) = 0;
  /// Probability vector aligned with `untried`.
  virtual std::vector<double> weights(std::span<const std::uint64_t> untried) const = 0;
};

/// Null model: uniformly random untried keys.
std::unique_ptr<Ranker> make_random_ranker();
/// Best-first expansion of single-bit neighbours of the best observed keys;
/// after `patience` rounds without improvement half of each batch becomes
/// 2-3 bit perturbations of the incumbent.
std::unique_ptr<Ranker> make_hill_climb_ranker(int patience = 3);
/// Ridge regression of normalized distance rank (0 = best, 1 = worst) on
/// the +/-1 key bits; proposes the untried keys with the lowest prediction.
/// Weights are a softmax of the negated predictions at temperature tau.
std::unique_ptr<Ranker> make_regression_ranker(double tau = 0.1, double ridge = 1e-3);

std::vector<std::string> builtin_ranker_names();
/// Throws std::invalid_argument for unknown names.
std::unique_ptr<Ranker> make_ranker(const std::string& name);

/// Linear model used by the regression ranker, exposed for testing.
class BitRegression {
 public:
  /// Least squares of y on [1, x_1..x_d] with x_i = +1 for a set bit and -1
  /// otherwise; `ridge` is added to the diagonal.
  static BitRegression fit(int key_bits, std::span<const std::uint64_t> keys, std::span<const double> y,
                           double ridge = 1e-3);
  double predict(std::uint64_t key) const;
  const std::vector<double>& coefficients() const noexcept { return beta_; }

 private:
  int key_bits_ = 0;
  std::vector<double> beta_;
};

struct Ai2Options {
  std::size_t t = 64;
  int max_rounds = 100;
  std::uint64_t seed = 0;
  /// Plausibility threshold for the stop test; NaN means the calibrated one.
  double theta = std::numeric_limits<double>::quiet_NaN();
  /// Known-plaintext calibration mode: stop on an exact candidate match
  /// without the language test.
  bool known_plaintext = false;
  /// Record ranker.weights() spikedness each round (enumerable spaces only;
  /// costs one pass over the untried keys per round).
  bool track_spikedness = false;
  /// Metrics to rotate to, in order, after `stagnation_rounds` rounds
  /// without improvement. Empty disables switching.
  std::vector<MetricId> fallback_metrics;
  int stagnation_rounds = 5;
  std::size_t workers = 1;
};

/// Round 0 tries t seeded-random keys; each following batch comes from the
/// ranker. keys_tried counts the successful key's position within its batch.
SearchState ai2_search(const CipherSpec& spec, const BitString& c_q, const PlausibleSet& plausible,
                       const MetricId& metric, Ranker& ranker, const Ai2Options& opts);

void write_trace_csv(std::ostream& out, const SearchState& s, const std::vector<std::string>& meta = {});

struct SeriesPoint {
  BitString key;
  BitString plaintext;
};

/// Walks from k0 to k1 one differing bit at a time, in a seeded-random order
/// of the differing positions, decrypting c at every step.
std::vector<SeriesPoint> reverse_avalanche_series(const CipherSpec& spec, const BitString& c, const BitString& k0,
                                                  const BitString& k1, std::uint64_t seed);

struct ProbeReport {
  std::size_t length = 0;
  /// Every plaintext identical; no order is distinguishable.
  bool degenerate = false;
  /// All orders scored (length <= 8) or greedy chaining (longer).
  bool exact = false;
  /// The chosen minimum-cost order is the true one or its reverse.
  bool order_recovered = false;
  /// Orders (reversal pairs counted once) sharing the minimum cost.
  std::size_t minimal_orders = 0;
  /// Probability of recovering the order by guessing: 2 / length!.
  double chance = 0.0;
  /// Spearman rank correlation of i against distance(P_i, P_0).
  double spearman = 0.0;
  std::vector<double> endpoint_distances;
};

/// Scores orderings of the series plaintexts by summed successive distance.
/// Ties among minimal orders are broken at random from `seed`.
ProbeReport reverse_avalanche_probe(std::span<const BitString> series_plaintexts, const MetricId& metric,
                                    std::uint64_t seed = 0);

}  // namespace pdcbench
