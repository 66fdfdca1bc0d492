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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pdcbench/analysis.hpp"
#include "pdcbench/rng.hpp"
#include "pdcbench/search.hpp"
#include "pdcbench/stats.hpp"

namespace pdcbench {

namespace {

constexpr std::size_t kExactLimit = 8;

void fisher_yates(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

double path_cost(const std::vector<std::vector<double>>& d, const std::vector<std::size_t>& order) {
  double c = 0.0;
  for (std::size_t i = 1; i < order.size(); ++i) c += d[order[i - 1]][order[i]];
  return c;
}

bool same_cost(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

std::vector<SeriesPoint> reverse_avalanche_series(const CipherSpec& spec, const BitString& c, const BitString& k0,
                                                  const BitString& k1, std::uint64_t seed) {
  Cipher cipher(spec);
  const auto kb = static_cast<std::size_t>(cipher.key_bits());
  if (k0.size() != kb || k1.size() != kb) {
    throw std::invalid_argument("reverse_avalanche_series: keys must be " + std::to_string(kb) + " bits");
  }
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < kb; ++i) {
    if (k0[i] != k1[i]) diff.push_back(i);
  }
  Rng rng(seed);
  fisher_yates(diff, rng);

  std::vector<SeriesPoint> out;
  out.reserve(diff.size() + 1);
  BitString key = k0;
  out.push_back({key, cipher.decrypt_ecb(c, key)});
  for (auto pos : diff) {
    key = key.flipped(pos);
    out.push_back({key, cipher.decrypt_ecb(c, key)});
  }
  return out;
}

ProbeReport reverse_avalanche_probe(std::span<const BitString> series, const MetricId& metric, std::uint64_t seed) {
  const std::size_t n = series.size();
  if (n < 2) throw std::invalid_argument("reverse_avalanche_probe: series needs at least 2 plaintexts");
  ProbeReport r;
  r.length = n;
  r.degenerate = std::all_of(series.begin(), series.end(), [&](const BitString& p) { return p == series[0]; });
  r.chance = 2.0 / factorial(n);

  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = dataset_distance(metric, series[i], series[j]).value;
      if (std::isnan(v)) v = 1.0;
      d[i][j] = d[j][i] = v;
    }
  }

  r.endpoint_distances.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.endpoint_distances[i] = d[i][0];
  {
    std::vector<double> idx(n);
    std::iota(idx.begin(), idx.end(), 0.0);
    bool flat = std::all_of(r.endpoint_distances.begin() + 1, r.endpoint_distances.end(),
                            [&](double v) { return v == r.endpoint_distances[1]; });
    r.spearman = flat && n > 2 ? 0.0 : stats::spearman(idx, r.endpoint_distances);
    if (std::isnan(r.spearman)) r.spearman = 0.0;
  }

  // The solver sees the plaintexts in shuffled positions; shuffled[i] is the
  // true index of the item at position i.
  Rng rng(seed);
  std::vector<std::size_t> shuffled(n);
  std::iota(shuffled.begin(), shuffled.end(), std::size_t{0});
  fisher_yates(shuffled, rng);

  std::vector<std::vector<std::size_t>> best_orders;
  double best_cost = std::numeric_limits<double>::infinity();
  auto consider = [&](const std::vector<std::size_t>& order_true) {
    double c = path_cost(d, order_true);
    if (c < best_cost && !same_cost(c, best_cost)) {
      best_cost = c;
      best_orders.clear();
    }
    if (same_cost(c, best_cost)) best_orders.push_back(order_true);
  };

  std::vector<std::size_t> order(n);
  if (n <= kExactLimit) {
    r.exact = true;
    std::iota(order.begin(), order.end(), std::size_t{0});
    do {
      // One representative per reversal pair.
      if (order.front() > order.back()) continue;
      std::vector<std::size_t> t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = shuffled[order[i]];
      if (t.front() > t.back()) std::reverse(t.begin(), t.end());
      consider(t);
    } while (std::next_permutation(order.begin(), order.end()));
  } else {
    for (std::size_t start = 0; start < n; ++start) {
      std::vector<bool> used(n, false);
      std::vector<std::size_t> chain{start};
      used[start] = true;
      while (chain.size() < n) {
        std::size_t cur = chain.back();
        std::size_t next = n;
        for (std::size_t j = 0; j < n; ++j) {
          if (used[j]) continue;
          double dj = d[shuffled[cur]][shuffled[j]];
          if (next == n || dj < d[shuffled[cur]][shuffled[next]]) next = j;
        }
        used[next] = true;
        chain.push_back(next);
      }
      std::vector<std::size_t> t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = shuffled[chain[i]];
      if (t.front() > t.back()) std::reverse(t.begin(), t.end());
      if (std::find(best_orders.begin(), best_orders.end(), t) == best_orders.end()) consider(t);
    }
  }
  r.minimal_orders = best_orders.size();
  const auto& pick = best_orders[uniform_below(rng, best_orders.size())];
  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  r.order_recovered = pick == identity;
  return r;
}

}  // namespace pdcbench
