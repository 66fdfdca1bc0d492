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

#include "pdcbench/lang.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pdcbench/rng.hpp"

namespace pdcbench::detail {
std::string_view embedded_bigram_table();
std::string_view embedded_corpus();
}  // namespace pdcbench::detail

namespace pdcbench::lang {

std::optional<int> letter_code(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a';
  if (c == ' ') return kSpaceCode;
  return std::nullopt;
}

char code_letter(int code) {
  if (code >= 0 && code < 26) return static_cast<char>('A' + code);
  if (code == kSpaceCode) return ' ';
  return '?';
}

std::string normalize_text(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    char u = (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
    if (u >= 'A' && u <= 'Z') {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(u);
    } else {
      pending_space = true;
    }
  }
  return out;
}

BitString encode_text(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size() * kLetterBits);
  for (char c : text) {
    auto code = letter_code(c);
    if (!code) throw std::invalid_argument("encode_text: character '" + std::string(1, c) + "' is not in the alphabet");
    for (int b = kLetterBits - 1; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((*code >> b) & 1));
  }
  return BitString(std::move(bits));
}

std::string decode_text(const BitString& bits) {
  std::string out;
  for (std::size_t i = 0; i + kLetterBits <= bits.size(); i += kLetterBits) {
    out.push_back(code_letter(static_cast<int>(bits.slice(i, kLetterBits).to_uint())));
  }
  return out;
}

BitString letter_payload(const BitString& bits) {
  return bits.slice(0, bits.size() - bits.size() % kLetterBits);
}

BitString encode_padded(std::string_view text, int block_bits) {
  auto bits = encode_text(text);
  auto bb = static_cast<std::size_t>(block_bits);
  std::size_t padded = (bits.size() + bb - 1) / bb * bb;
  if (padded == 0) padded = bb;
  return bits.concat(BitString(padded - bits.size()));
}

LanguageModel LanguageModel::from_counts(const Table& pair_counts, double smoothing, double redundancy) {
  if (!(redundancy > 0.0)) throw std::invalid_argument("LanguageModel: redundancy must be positive");
  if (!(smoothing > 0.0)) throw std::invalid_argument("LanguageModel: smoothing must be positive");
  double total = 0.0;
  for (const auto& row : pair_counts) {
    for (double c : row) {
      if (c < 0.0) throw std::invalid_argument("LanguageModel: negative count");
      total += c;
    }
  }
  if (total <= 0.0) throw std::invalid_argument("LanguageModel: empty count table");
  const double pseudo = smoothing * total / (kAlphabetSize * kAlphabetSize);

  LanguageModel lm;
  lm.redundancy_ = redundancy;
  double smoothed_total = total + pseudo * kAlphabetSize * kAlphabetSize;
  lm.min_conditional_ = 1.0;
  for (std::size_t a = 0; a < kAlphabetSize; ++a) {
    double row_total = 0.0;
    for (std::size_t b = 0; b < kAlphabetSize; ++b) row_total += pair_counts[a][b] + pseudo;
    for (std::size_t b = 0; b < kAlphabetSize; ++b) {
      double cell = pair_counts[a][b] + pseudo;
      lm.joint_[a][b] = cell / smoothed_total;
      lm.conditional_[a][b] = cell / row_total;
      lm.min_conditional_ = std::min(lm.min_conditional_, lm.conditional_[a][b]);
    }
    lm.unigram_[a] = row_total / smoothed_total;
  }
  return lm;
}

LanguageModel LanguageModel::load(std::istream& in, double smoothing, double redundancy) {
  Table counts{};
  std::string line;
  int lineno = 0;
  auto code_of = [](char c) -> int {
    if (c == '_') return kSpaceCode;
    auto code = letter_code(c);
    return code && *code != kSpaceCode ? *code : -1;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string pair;
    double count = 0.0;
    if (!(ls >> pair >> count) || pair.size() != 2) {
      throw std::invalid_argument("bigram table line " + std::to_string(lineno) + ": expected 'XY count'");
    }
    int a = code_of(pair[0]);
    int b = code_of(pair[1]);
    if (a < 0 || b < 0) throw std::invalid_argument("bigram table line " + std::to_string(lineno) + ": bad symbol");
    counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += count;
  }
  return from_counts(counts, smoothing, redundancy);
}

LanguageModel LanguageModel::load_file(const std::string& path, double smoothing, double redundancy) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open bigram table '" + path + "'");
  return load(in, smoothing, redundancy);
}

const LanguageModel& LanguageModel::english() {
  static const LanguageModel lm = [] {
    std::istringstream in{std::string(detail::embedded_bigram_table())};
    return load(in);
  }();
  return lm;
}

double plausibility_score(const LanguageModel& lm, const BitString& p) {
  if (p.size() % kLetterBits != 0) {
    throw std::invalid_argument("plausibility_score: length " + std::to_string(p.size()) + " is not a multiple of 5");
  }
  std::size_t n = p.size() / kLetterBits;
  if (n == 0) return 0.0;
  auto bits = p.bits();
  double sum = 0.0;
  int prev = -1;
  for (std::size_t i = 0; i < n; ++i) {
    int code = 0;
    for (std::size_t b = 0; b < kLetterBits; ++b) code = (code << 1) | bits[i * kLetterBits + b];
    if (code >= kAlphabetSize) {
      sum += kBadSymbolLog2;
      prev = -1;
      continue;
    }
    sum += std::log2(prev < 0 ? lm.unigram(code) : lm.conditional(prev, code));
    prev = code;
  }
  return sum / static_cast<double>(n);
}

bool is_plausible(const LanguageModel& lm, const BitString& p, double threshold) {
  return plausibility_score(lm, p) >= threshold;
}

double unicity_distance(double key_entropy_bits, double redundancy_bits_per_letter) {
  if (!(key_entropy_bits > 0.0) || !(redundancy_bits_per_letter > 0.0)) {
    throw std::invalid_argument("unicity_distance: arguments must be positive");
  }
  return key_entropy_bits / redundancy_bits_per_letter;
}

Calibration calibrate_threshold(const LanguageModel& lm, std::string_view corpus, std::size_t letters,
                                std::size_t samples, std::uint64_t seed) {
  if (letters == 0 || samples == 0) throw std::invalid_argument("calibrate_threshold: empty sample request");
  std::string text = normalize_text(corpus);
  if (text.size() < letters) throw std::invalid_argument("calibrate_threshold: corpus shorter than one window");
  Rng rng(seed);
  std::vector<double> english(samples);
  std::vector<double> random(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    auto offset = uniform_below(rng, text.size() - letters + 1);
    english[s] = plausibility_score(lm, encode_text(std::string_view(text).substr(offset, letters)));
    random[s] = plausibility_score(lm, random_bits(rng, letters * kLetterBits));
  }
  Calibration c;
  c.samples = samples;
  c.letters = letters;
  c.english_mean = std::accumulate(english.begin(), english.end(), 0.0) / static_cast<double>(samples);
  c.random_mean = std::accumulate(random.begin(), random.end(), 0.0) / static_cast<double>(samples);
  c.midpoint = 0.5 * (c.english_mean + c.random_mean);

  std::sort(english.begin(), english.end());
  std::sort(random.begin(), random.end());
  auto miss = [&](double t) {
    return static_cast<double>(std::lower_bound(english.begin(), english.end(), t) - english.begin()) /
           static_cast<double>(samples);
  };
  auto accept = [&](double t) {
    return static_cast<double>(random.end() - std::lower_bound(random.begin(), random.end(), t)) /
           static_cast<double>(samples);
  };
  // miss() rises and accept() falls with t; bisect to where they cross.
  double lo = std::min(english.front(), random.front());
  double hi = std::max(english.back(), random.back());
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    double mid = 0.5 * (lo + hi);
    (miss(mid) < accept(mid) ? lo : hi) = mid;
  }
  c.threshold = hi;
  c.english_miss_rate = miss(c.threshold);
  c.random_accept_rate = accept(c.threshold);
  return c;
}

const Calibration& default_calibration() {
  static const Calibration c =
      calibrate_threshold(LanguageModel::english(), corpus_text(), 12, 10000, derive_seed(0, "lang.calibration"));
  return c;
}

std::string_view corpus_text() {
  static const std::string text = [] {
    std::string out;
    std::istringstream in{std::string(detail::embedded_corpus())};
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line.front() == '#') continue;
      out += line;
      out.push_back('\n');
    }
    return out;
  }();
  return text;
}

std::vector<std::string> corpus_sentences() {
  std::vector<std::string> out;
  std::istringstream in{std::string(corpus_text())};
  std::string line;
  while (std::getline(in, line)) {
    auto s = normalize_text(line);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace pdcbench::lang
