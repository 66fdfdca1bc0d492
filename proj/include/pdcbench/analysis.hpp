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
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdcbench/bitstring.hpp"
#include "pdcbench/cipher.hpp"
#include "pdcbench/metrics.hpp"

namespace pdcbench {

struct AvalancheReport {
  /// Flip probability of each ciphertext bit, most significant first.
  std::vector<double> per_bit;
  double mean = 0.0;
  /// Smallest and largest |per_bit[i] - 0.5|.
  double min_deviation = 0.0;
  double max_deviation = 0.0;
  std::size_t trials = 0;
};

/// Each trial draws random (p, k), flips one random key bit and records which
/// ciphertext bits changed.
AvalancheReport measure_avalanche(const CipherSpec& spec, std::size_t trials, std::uint64_t seed);

/// Distances of one sampled key K_i (and its decryption P_i) to the ground
/// truth (K_0, P_0). Both vectors are aligned with the dataset's metric list.
struct CipherAnalysisRecord {
  std::uint64_t key_index = 0;
  std::uint64_t key = 0;
  std::vector<Distance> key_distances;
  std::vector<Distance> plaintext_distances;
};

struct AnalysisDataset {
  CipherSpec spec;
  BitString k0;
  BitString p0;
  BitString c0;
  std::uint64_t seed = 0;
  std::vector<MetricId> metrics;
  std::vector<CipherAnalysisRecord> records;

  /// Position of `m` in `metrics`; throws std::invalid_argument if absent.
  std::size_t column(const MetricId& m) const;
};

/// Like metric_eval, but an undefined value (cosine against an all-zero
/// string) comes back as NaN flagged non-finite instead of throwing.
Distance dataset_distance(const MetricId& m, const BitString& x, const BitString& y);

/// Record for one key against (k0, p0, c0). The record for k0 itself has every
/// distance 0.
CipherAnalysisRecord make_record(const Cipher& cipher, const std::vector<MetricId>& metrics, const BitString& k0,
                                 const BitString& p0, const BitString& c0, std::uint64_t key, std::uint64_t key_index);

/// Draws P_0 and K_0 from `seed`, encrypts, then samples m distinct keys other
/// than K_0 and decrypts C_0 under each. m == 2^key_bits - 1 walks the whole
/// wrong-key space in counting order. Records come back in sampling order
/// regardless of `workers`.
AnalysisDataset generate_analysis_dataset(const CipherSpec& spec, const std::vector<MetricId>& metrics,
                                          std::uint64_t m, std::uint64_t seed, std::size_t workers = 1);

/// Same, with the ground truth given explicitly.
AnalysisDataset generate_analysis_dataset(const CipherSpec& spec, const std::vector<MetricId>& metrics,
                                          std::uint64_t m, const BitString& k0, const BitString& p0,
                                          std::uint64_t seed, std::size_t workers = 1);

struct ScatterDataset {
  CipherSpec spec;
  BitString k0;
  BitString p0;
  BitString c0;
  MetricId metric_x;
  MetricId metric_y;
  std::vector<std::pair<double, double>> points;
  std::uint64_t seed = 0;

  /// Spearman rank correlation of x against y. Non-finite points are skipped.
  double spearman() const;
};

ScatterDataset project_scatter(const AnalysisDataset& data, const MetricId& dk, const MetricId& dp);

/// KL divergence of `weights` from the uniform distribution, in bits.
/// Throws unless the weights are non-negative and sum to 1 within 1e-9.
double spikedness(std::span<const double> weights);
/// max(weights) * n; 1 for a flat curve.
double peak_ratio(std::span<const double> weights);

/// One row per record: key_index, key_hex, then {metric}_dk and {metric}_dp
/// for every metric. `meta` lines are written first, each prefixed with "# ".
void write_dataset_csv(std::ostream& out, const AnalysisDataset& data, const std::vector<std::string>& meta = {});
void write_scatter_csv(std::ostream& out, const ScatterDataset& s, const std::vector<std::string>& meta = {});
void write_avalanche_csv(std::ostream& out, const AvalancheReport& r, const std::vector<std::string>& meta = {});

}  // namespace pdcbench
