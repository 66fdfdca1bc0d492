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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pdcbench/bitstring.hpp"

namespace pdcbench {

enum class MetricKind : std::uint8_t {
  hamming,
  q_summary,
  levenshtein,
  jaccard,
  cosine,
  euclidean,
  manhattan,
  lcs,
};

/// Names one distance metric. q is meaningful only for q_summary, where it
/// is an odd group width >= 3; it is 0 for every other kind.
struct MetricId {
  MetricKind kind = MetricKind::hamming;
  int q = 0;

  static MetricId hamming() { return {MetricKind::hamming, 0}; }
  static MetricId q_summary(int q);
  static MetricId levenshtein() { return {MetricKind::levenshtein, 0}; }
  static MetricId jaccard() { return {MetricKind::jaccard, 0}; }
  static MetricId cosine() { return {MetricKind::cosine, 0}; }
  static MetricId euclidean() { return {MetricKind::euclidean, 0}; }
  static MetricId manhattan() { return {MetricKind::manhattan, 0}; }
  static MetricId lcs() { return {MetricKind::lcs, 0}; }

  /// Stable identifier used in CSV headers and configs: "hamming", "qsum3", ...
  std::string name() const;
  /// Inverse of name(). Throws std::invalid_argument on unknown names.
  static MetricId parse(std::string_view name);

  /// Metrics that compare strings position by position and therefore need
  /// equal lengths.
  bool positional() const;

  friend auto operator<=>(const MetricId&, const MetricId&) = default;
};

/// The eight metrics, with q_summary at the given q.
std::vector<MetricId> all_metrics(int q = 3);

/// Parses a comma separated list of metric names.
std::vector<MetricId> parse_metric_list(std::string_view list);

struct Distance {
  double value = 0.0;
  /// False only for q_summary pairs that never converge.
  bool finite = true;

  friend bool operator==(const Distance&, const Distance&) = default;
};

/// Count of positions holding opposite bits. Throws on length mismatch.
std::size_t hamming(const BitString& x, const BitString& y);

/// One round of q-bit majority summarization, groups taken left to right.
/// A trailing group of r < q bits yields its own majority; an exact tie in
/// an even-sized trailing group yields 0.
BitString q_summarize(const BitString& s, int q);

/// Smallest t such that t rounds of q_summarize make x and y identical. When
/// both strings shrink to one bit and still differ, the result is flagged
/// non-finite with value (rounds taken) + 1.
Distance q_summary_distance(const BitString& x, const BitString& y, int q);

std::size_t levenshtein(const BitString& x, const BitString& y);
std::size_t lcs_length(const BitString& x, const BitString& y);

/// 1 - |A n B| / |A u B| over the sets of positions holding 1. Two strings
/// with no set bits are at distance 0.
double jaccard_distance(const BitString& x, const BitString& y);
/// 1 - cos(angle) of the 0/1 vectors. Throws if either operand is all zero.
double cosine_distance(const BitString& x, const BitString& y);
double euclidean_distance(const BitString& x, const BitString& y);
double manhattan_distance(const BitString& x, const BitString& y);
/// x.len + y.len - 2 * LCS(x, y).
std::size_t lcs_distance(const BitString& x, const BitString& y);

/// Dispatches to the named metric.
Distance metric_eval(const MetricId& m, const BitString& x, const BitString& y);

/// Number of n-bit strings at Hamming distance h from a fixed string, C(n, h).
/// Throws std::overflow_error when the count exceeds 64 bits.
std::uint64_t sphere_size(int n, int h);

}  // namespace pdcbench
