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
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdcbench/bitflip.hpp"
#include "pdcbench/cipher.hpp"
#include "pdcbench/config.hpp"
#include "pdcbench/metrics.hpp"
#include "pdcbench/search.hpp"

namespace pdcbench {

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view data);

/// Everything a recipe run depends on. Recipe-specific knobs stay in `raw`
/// under a section named after the recipe.
struct ExperimentConfig {
  std::string experiment;
  CipherSpec cipher = CipherSpec::spn(4);
  std::vector<MetricId> metrics;
  std::uint64_t seed = 1;
  std::uint64_t m = 2000;
  std::size_t t = 64;
  int max_rounds = 0;
  std::size_t trials = 0;
  std::string output_dir = "out";
  std::optional<double> theta;
  std::size_t workers = 1;
  Config raw;

  /// Throws ConfigError naming the offending field.
  static ExperimentConfig from_config(const Config& cfg);
  /// Hash of the canonical config text minus output location and worker
  /// count, neither of which may change any data file.
  std::uint64_t hash() const;
  double resolved_theta() const;
};

struct RecipeInfo {
  std::string name;
  std::string doc;
  /// Runnable config text.
  std::string default_config;
};

const std::vector<RecipeInfo>& list_recipes();
/// Closest registered recipe name by edit distance.
std::string nearest_recipe(std::string_view name);
/// Default config of a recipe; throws ConfigError for unknown names.
Config recipe_default_config(std::string_view name);

struct RunResult {
  std::vector<std::string> files;
  /// "key = value" lines, also written to summary.txt.
  std::string summary;
};

/// Runs the named recipe and writes its artifacts into cfg.output_dir.
/// Config problems raise ConfigError; anything else that goes wrong leaves
/// an INCOMPLETE marker in the output directory and rethrows.
RunResult run_experiment(const ExperimentConfig& cfg);

// Experiment kernels shared by the recipes and the acceptance suite.

struct UnicityVarietyOptions {
  int max_letters = 40;
  int fixtures = 20;
  int truncated_bits = 10;
  int spn_rounds = 4;
  double theta = std::numeric_limits<double>::quiet_NaN();
  int bitflip_bits = 6;
  int bitflip_streams = 10;
  double noise_rate = 0.5;
  std::size_t workers = 1;
};

struct UnicityVarietyRow {
  int letters = 0;
  /// Mean over fixtures of wrong keys whose decryption is plausible.
  double spn_plausible_keys = 0.0;
  /// Mean over streams of wrong keybooks that read exactly `letters`
  /// letters from the noisy stream prefix.
  double bitflip_consistent_books = 0.0;
  /// Same without noise: books that read every unit as a letter.
  double bitflip_noiseless_books = 0.0;
};

struct UnicityVarietyResult {
  std::vector<UnicityVarietyRow> rows;
  double theta = 0.0;
  std::uint64_t wrong_keys = 0;
  std::uint64_t wrong_books = 0;
  double unicity_letters = 0.0;
  /// Smallest L past the horizon from which the spn count stays below 1, or
  /// -1 if it never does within the sweep.
  int crossing_letters = -1;
  /// truncated_bits / crossing_letters: the redundancy the plausibility test
  /// actually exploits.
  double effective_redundancy = 0.0;
  bool spn_ambiguous_before_horizon = false;
  bool bitflip_never_collapses = false;
};

UnicityVarietyResult unicity_variety(const UnicityVarietyOptions& opts, std::uint64_t seed);

struct ReverseAvalancheSummary {
  std::size_t series = 0;
  std::size_t recovered = 0;
  double chance = 0.0;
  double mean_spearman = 0.0;
  /// Mean Hamming distance to P_0 at each series index.
  std::vector<double> mean_endpoint_distance;
  /// Per-series outcomes, in series order.
  std::vector<ProbeReport> reports;
};

/// `series` random walks of `h` key bits on `spec`, each probed with metric.
ReverseAvalancheSummary reverse_avalanche_experiment(const CipherSpec& spec, std::size_t series, int h,
                                                     const MetricId& metric, std::uint64_t seed,
                                                     std::size_t workers = 1);

/// One paired attack target: a key and a short English plaintext spanning
/// two spn blocks, with decoy candidates.
struct AttackTarget {
  std::uint64_t key = 0;
  BitString plaintext;
  BitString ciphertext;
  PlausibleSet plausible;
};

/// Deterministic target for trial `index`.
AttackTarget make_attack_target(const CipherSpec& spec, std::uint64_t seed, std::uint64_t index,
                                std::size_t decoys = 3);

/// Stop test shared by the blind and accelerated searches: exact match to a
/// candidate that also reads as English.
StopPredicate candidate_stop(const PlausibleSet& plausible, double theta);

/// 8-bit, h = 4 book over "ABCD " with at most two strings per letter.
BitFlipKeyBook demo_bitflip_book(std::uint64_t seed);

}  // namespace pdcbench
