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

#include "pdcbench/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace pdcbench {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace


namespace {

void require_same_length(const BitString& x, const BitString& y, const char* what) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  }
}

void require_q(int q) {
  if (q < 3 || q % 2 == 0) throw std::invalid_argument("q_summary: q must be odd and >= 3, got " + std::to_string(q));
}

}  // namespace

MetricId MetricId::q_summary(int q) {
  require_q(q);
  return {MetricKind::q_summary, q};
}

std::string MetricId::name() const {
  switch (kind) {
    case MetricKind::hamming: return "hamming";
    case MetricKind::q_summary: return "qsum" + std::to_string(q);
    case MetricKind::levenshtein: return "levenshtein";
    case MetricKind::jaccard: return "jaccard";
    case MetricKind::cosine: return "cosine";
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::manhattan: return "manhattan";
    case MetricKind::lcs: return "lcs";
  }
  return "unknown";
}

MetricId MetricId::parse(std::string_view name) {
  if (name == "hamming") return hamming();
  if (name == "levenshtein") return levenshtein();
  if (name == "jaccard") return jaccard();
  if (name == "cosine") return cosine();
  if (name == "euclidean") return euclidean();
  if (name == "manhattan") return manhattan();
  if (name == "lcs") return lcs();
  if (name.starts_with("qsum")) {
    int q = 0;
    auto digits = name.substr(4);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) return q_summary(q);
  }
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

bool MetricId::positional() const {
  switch (kind) {
    case MetricKind::levenshtein:
    case MetricKind::jaccard:
    case MetricKind::lcs: return false;
    default: return true;
  }
}

std::vector<MetricId> all_metrics(int q) {
  return {MetricId::hamming(),   MetricId::q_summary(q), MetricId::levenshtein(), MetricId::jaccard(),
          MetricId::cosine(),    MetricId::euclidean(),  MetricId::manhattan(),   MetricId::lcs()};
}

std::vector<MetricId> parse_metric_list(std::string_view list) {
  std::vector<MetricId> out;
  while (!list.empty()) {
    auto comma = list.find(',');
    auto item = list.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.push_back(MetricId::parse(item));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return out;
}

std::size_t hamming(const BitString& x, const BitString& y) {
  require_same_length(x, y, "hamming");
  auto a = x.bits();
  auto b = y.bits();
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] ^ b[i];
  return d;
}

BitString q_summarize(const BitString& s, int q) {
  require_q(q);
  if (s.empty()) throw std::invalid_argument("q_summarize: empty input");
  auto bits = s.bits();
  const std::size_t uq = static_cast<std::size_t>(q);
  std::vector<std::uint8_t> out;
  out.reserve((bits.size() + uq - 1) / uq);
  for (std::size_t start = 0; start < bits.size(); start += uq) {
    std::size_t end = std::min(bits.size(), start + uq);
    std::size_t ones = 0;
    for (std::size_t i = start; i < end; ++i) ones += bits[i];
    // Strict majority; a tie (possible only in an even trailing group) is 0.
    out.push_back(2 * ones > end - start ? 1 : 0);
  }
  return BitString(std::move(out));
}

Distance q_summary_distance(const BitString& x, const BitString& y, int q) {
  require_q(q);
  require_same_length(x, y, "q_summary_distance");
  if (x.empty()) throw std::invalid_argument("q_summary_distance: empty input");
  BitString a = x;
  BitString b = y;
  int rounds = 0;
  while (a != b) {
    if (a.size() == 1) return {static_cast<double>(rounds + 1), false};
    a = q_summarize(a, q);
    b = q_summarize(b, q);
    ++rounds;
  }
  return {static_cast<double>(rounds), true};
}

std::size_t levenshtein(const BitString& x, const BitString& y) {
  auto a = x.bits();
  auto b = y.bits();
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0U : 1U)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t lcs_length(const BitString& x, const BitString& y) {
  auto a = x.bits();
  auto b = y.bits();
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t lcs_distance(const BitString& x, const BitString& y) {
  return x.size() + y.size() - 2 * lcs_length(x, y);
}

double jaccard_distance(const BitString& x, const BitString& y) {
  auto a = x.bits();
  auto b = y.bits();
  std::size_t both = 0;
  std::size_t either = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    bool ai = i < a.size() && a[i];
    bool bi = i < b.size() && b[i];
    both += ai && bi;
    either += ai || bi;
  }
  if (either == 0) return 0.0;
  return 1.0 - static_cast<double>(both) / static_cast<double>(either);
}

double cosine_distance(const BitString& x, const BitString& y) {
  require_same_length(x, y, "cosine");
  auto a = x.bits();
  auto b = y.bits();
  std::size_t dot = 0;
  std::size_t na = 0;
  std::size_t nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] & b[i];
    na += a[i];
    nb += b[i];
  }
  if (na == 0 || nb == 0) throw std::invalid_argument("cosine: all-zero operand has no direction");
  // sqrt(na * nb) is exact when na == nb, so self-distance is exactly 0.
  double sim = static_cast<double>(dot) / std::sqrt(static_cast<double>(na) * static_cast<double>(nb));
  return std::max(0.0, 1.0 - sim);
}

double euclidean_distance(const BitString& x, const BitString& y) {
  require_same_length(x, y, "euclidean");
  return std::sqrt(static_cast<double>(hamming(x, y)));
}

double manhattan_distance(const BitString& x, const BitString& y) {
  require_same_length(x, y, "manhattan");
  auto a = x.bits();
  auto b = y.bits();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i]));
  return sum;
}

Distance metric_eval(const MetricId& m, const BitString& x, const BitString& y) {
  switch (m.kind) {
    case MetricKind::hamming: return {static_cast<double>(hamming(x, y)), true};
    case MetricKind::q_summary: return q_summary_distance(x, y, m.q);
    case MetricKind::levenshtein: return {static_cast<double>(levenshtein(x, y)), true};
    case MetricKind::jaccard: return {jaccard_distance(x, y), true};
    case MetricKind::cosine: return {cosine_distance(x, y), true};
    case MetricKind::euclidean: return {euclidean_distance(x, y), true};
    case MetricKind::manhattan: return {manhattan_distance(x, y), true};
    case MetricKind::lcs: return {static_cast<double>(lcs_distance(x, y)), true};
  }
  throw std::invalid_argument("metric_eval: unknown metric kind");
}

std::uint64_t sphere_size(int n, int h) {
  if (n < 1) throw std::invalid_argument("sphere_size: n must be positive");
  if (h < 0 || h > n) throw std::invalid_argument("sphere_size: h out of range [0, n]");
  int k = std::min(h, n - h);
  u128 c = 1;
  for (int i = 1; i <= k; ++i) {
    // c * (n - k + i) / i stays integral at every step.
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (c > static_cast<u128>(UINT64_MAX)) throw std::overflow_error("sphere_size: exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace pdcbench
