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


#include "pdcbench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "pdcbench/parallel.hpp"
#include "pdcbench/rng.hpp"
#include "pdcbench/stats.hpp"
#include "textio.hpp"

namespace pdcbench {

namespace {

std::uint64_t random_word(Rng& rng, int bits) {
  std::uint64_t w = rng();
  return bits >= 64 ? w : (w & ((std::uint64_t{1} << bits) - 1));
}

}  // namespace

AvalancheReport measure_avalanche(const CipherSpec& spec, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("measure_avalanche: trials must be >= 1");
  Cipher cipher(spec);
  const int bb = cipher.block_bits();
  const int kb = cipher.key_bits();
  Rng rng(seed);
  std::vector<std::size_t> flips(static_cast<std::size_t>(bb), 0);
  for (std::size_t t = 0; t < trials; ++t) {
    std::uint64_t p = random_word(rng, bb);
    std::uint64_t k = random_word(rng, kb);
    auto j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(kb)));
    std::uint64_t k_hat = k ^ (std::uint64_t{1} << (kb - 1 - j));
    std::uint64_t diff = cipher.encrypt_block(p, k) ^ cipher.encrypt_block(p, k_hat);
    for (int i = 0; i < bb; ++i) flips[static_cast<std::size_t>(i)] += (diff >> (bb - 1 - i)) & 1U;
  }
  AvalancheReport r;
  r.trials = trials;
  r.per_bit.resize(flips.size());
  r.min_deviation = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < flips.size(); ++i) {
    double prob = static_cast<double>(flips[i]) / static_cast<double>(trials);
    r.per_bit[i] = prob;
    sum += prob;
    double dev = std::abs(prob - 0.5);
    r.min_deviation = std::min(r.min_deviation, dev);
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  r.mean = sum / static_cast<double>(bb);
  return r;
}

std::size_t AnalysisDataset::column(const MetricId& m) const {
  auto it = std::find(metrics.begin(), metrics.end(), m);
  if (it == metrics.end()) throw std::invalid_argument("metric '" + m.name() + "' is not in the dataset");
  return static_cast<std::size_t>(it - metrics.begin());
}

Distance dataset_distance(const MetricId& m, const BitString& x, const BitString& y) {
  if (m.kind == MetricKind::cosine && (x.popcount() == 0 || y.popcount() == 0)) {
    if (x == y) return {0.0, true};
    return {std::numeric_limits<double>::quiet_NaN(), false};
  }
  return metric_eval(m, x, y);
}

CipherAnalysisRecord make_record(const Cipher& cipher, const std::vector<MetricId>& metrics, const BitString& k0,
                                 const BitString& p0, const BitString& c0, std::uint64_t key, std::uint64_t key_index) {
  CipherAnalysisRecord r;
  r.key_index = key_index;
  r.key = key;
  auto k = BitString::from_uint(key, static_cast<std::size_t>(cipher.key_bits()));
  auto p = cipher.decrypt_ecb(c0, k);
  r.key_distances.reserve(metrics.size());
  r.plaintext_distances.reserve(metrics.size());
  for (const auto& m : metrics) {
    r.key_distances.push_back(dataset_distance(m, k, k0));
    r.plaintext_distances.push_back(dataset_distance(m, p, p0));
  }
  return r;
}

AnalysisDataset generate_analysis_dataset(const CipherSpec& spec, const std::vector<MetricId>& metrics,
                                          std::uint64_t m, std::uint64_t seed, std::size_t workers) {
  Rng rng(derive_seed(seed, "analysis.truth"));
  auto k0 = random_bits(rng, static_cast<std::size_t>(spec.key_bits()));
  auto p0 = random_bits(rng, static_cast<std::size_t>(spec.block_bits()));
  return generate_analysis_dataset(spec, metrics, m, k0, p0, seed, workers);
}

AnalysisDataset generate_analysis_dataset(const CipherSpec& spec, const std::vector<MetricId>& metrics,
                                          std::uint64_t m, const BitString& k0, const BitString& p0,
                                          std::uint64_t seed, std::size_t workers) {
  if (m == 0) throw std::invalid_argument("generate_analysis_dataset: m must be >= 1");
  if (metrics.empty()) throw std::invalid_argument("generate_analysis_dataset: no metrics");
  Cipher cipher(spec);
  KeySpace ks{cipher.key_bits()};
  const std::uint64_t n = ks.size();
  if (n != 0 && m >= n) {
    throw std::invalid_argument("generate_analysis_dataset: m = " + std::to_string(m) + " needs more than the " +
                                std::to_string(n - 1) + " wrong keys available");
  }
  if (k0.size() != static_cast<std::size_t>(cipher.key_bits())) {
    throw std::invalid_argument("generate_analysis_dataset: k0 has the wrong length");
  }

  AnalysisDataset d;
  d.spec = spec;
  d.k0 = k0;
  d.p0 = p0;
  d.c0 = cipher.encrypt_ecb(p0, k0);
  d.seed = seed;
  d.metrics = metrics;

  const std::uint64_t k0w = k0.to_uint();
  std::vector<std::uint64_t> keys;
  keys.reserve(m);
  if (n != 0 && m == n - 1) {
    for (std::uint64_t k = 0; k < n; ++k) {
      if (k != k0w) keys.push_back(k);
    }
  } else {
    LazyPermutation perm(n, derive_seed(seed, "analysis.keys"));
    while (keys.size() < m) {
      auto k = perm.next();
      if (k != k0w) keys.push_back(k);
    }
  }

  d.records.resize(keys.size());
  parallel_for(keys.size(), workers, [&](std::size_t i) {
    d.records[i] = make_record(cipher, metrics, d.k0, d.p0, d.c0, keys[i], i + 1);
  });
  return d;
}

double ScatterDataset::spearman() const {
  std::vector<double> x, y;
  x.reserve(points.size());
  y.reserve(points.size());
  for (const auto& [a, b] : points) {
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    x.push_back(a);
    y.push_back(b);
  }
  return stats::spearman(x, y);
}

ScatterDataset project_scatter(const AnalysisDataset& data, const MetricId& dk, const MetricId& dp) {
  auto cx = data.column(dk);
  auto cy = data.column(dp);
  ScatterDataset s;
  s.spec = data.spec;
  s.k0 = data.k0;
  s.p0 = data.p0;
  s.c0 = data.c0;
  s.metric_x = dk;
  s.metric_y = dp;
  s.seed = data.seed;
  s.points.reserve(data.records.size());
  for (const auto& r : data.records) {
    auto x = r.key_distances.at(cx);
    auto y = r.plaintext_distances.at(cy);
    s.points.emplace_back(x.value, y.value);
  }
  return s;
}

namespace {

void check_probability_vector(std::span<const double> w) {
  if (w.empty()) throw std::invalid_argument("weights must not be empty");
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw std::invalid_argument("weights must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("weights must sum to 1");
}

}  // namespace

double spikedness(std::span<const double> weights) {
  check_probability_vector(weights);
  const double n = static_cast<double>(weights.size());
  double kl = 0.0;
  for (double w : weights) {
    if (w > 0.0) kl += w * std::log2(w * n);
  }
  return std::max(0.0, kl);
}

double peak_ratio(std::span<const double> weights) {
  check_probability_vector(weights);
  return *std::max_element(weights.begin(), weights.end()) * static_cast<double>(weights.size());
}

void write_dataset_csv(std::ostream& out, const AnalysisDataset& data, const std::vector<std::string>& meta) {
  detail::write_meta(out, meta);
  out << "key_index,key_hex";
  for (const auto& m : data.metrics) out << "," << m.name() << "_dk";
  for (const auto& m : data.metrics) out << "," << m.name() << "_dp";
  out << "\n";
  const auto kb = static_cast<std::size_t>(data.spec.key_bits());
  for (const auto& r : data.records) {
    out << r.key_index << "," << BitString::from_uint(r.key, kb).hex_digits();
    for (const auto& d : r.key_distances) out << "," << detail::real(d.value);
    for (const auto& d : r.plaintext_distances) out << "," << detail::real(d.value);
    out << "\n";
  }
}

void write_scatter_csv(std::ostream& out, const ScatterDataset& s, const std::vector<std::string>& meta) {
  detail::write_meta(out, meta);
  out << "# spec " << to_string(s.spec.family) << " rounds=" << s.spec.rounds << " seed=" << s.seed
      << " x=" << s.metric_x.name() << " y=" << s.metric_y.name() << "\n";
  out << "x,y\n";
  for (const auto& [x, y] : s.points) out << detail::real(x) << "," << detail::real(y) << "\n";
}

void write_avalanche_csv(std::ostream& out, const AvalancheReport& r, const std::vector<std::string>& meta) {
  detail::write_meta(out, meta);
  out << "bit,flip_probability\n";
  for (std::size_t i = 0; i < r.per_bit.size(); ++i) out << i << "," << detail::real(r.per_bit[i]) << "\n";
}

}  // namespace pdcbench
