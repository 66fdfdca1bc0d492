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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdcbench/bitstring.hpp"

namespace pdcbench::lang {

/// Letters travel as 5-bit codes: A=0 .. Z=25, space=26. Codes 27..31 are
/// outside the alphabet.
inline constexpr int kLetterBits = 5;
inline constexpr int kAlphabetSize = 27;
inline constexpr int kSpaceCode = 26;
inline constexpr double kDefaultRedundancy = 2.3;
/// Score charged for a code outside the alphabet, in bits.
inline constexpr double kBadSymbolLog2 = -10.0;

std::optional<int> letter_code(char c);
char code_letter(int code);

/// Upper-cases, keeps A-Z, and collapses every other run of characters into
/// a single space. Leading and trailing spaces are dropped.
std::string normalize_text(std::string_view text);

/// Text must already consist of A-Z and spaces.
BitString encode_text(std::string_view text);
/// Codes outside the alphabet render as '?'. Trailing bits that do not fill
/// a letter are ignored.
std::string decode_text(const BitString& bits);

/// Leading whole letters of `bits` (drops a trailing partial letter, e.g.
/// block padding).
BitString letter_payload(const BitString& bits);

/// Encodes text and zero-pads it to a multiple of `block_bits`.
BitString encode_padded(std::string_view text, int block_bits);

/// Unigram and bigram statistics over the 27-symbol alphabet.
class LanguageModel {
 public:
  using Table = std::array<std::array<double, kAlphabetSize>, kAlphabetSize>;

  /// Builds a model from raw pair counts. Every cell receives an extra
  /// `smoothing` times the mean cell count so no transition is impossible.
  static LanguageModel from_counts(const Table& pair_counts, double smoothing = kDefaultSmoothing,
                                   double redundancy_bits_per_letter = kDefaultRedundancy);

  /// Reads "XY count" lines ('_' denotes space); '#' lines are comments.
  static LanguageModel load(std::istream& in, double smoothing = kDefaultSmoothing,
                            double redundancy_bits_per_letter = kDefaultRedundancy);
  static LanguageModel load_file(const std::string& path, double smoothing = kDefaultSmoothing,
                                 double redundancy_bits_per_letter = kDefaultRedundancy);

  /// The shipped English table.
  static const LanguageModel& english();

  static constexpr double kDefaultSmoothing = 1e-3;

  double unigram(int a) const { return unigram_[static_cast<std::size_t>(a)]; }
  /// Joint probability of the pair (a, b); the table sums to 1.
  double joint(int a, int b) const { return joint_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  /// P(b | a).
  double conditional(int a, int b) const {
    return conditional_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  double min_conditional() const noexcept { return min_conditional_; }
  double redundancy_bits_per_letter() const noexcept { return redundancy_; }

 private:
  std::array<double, kAlphabetSize> unigram_{};
  Table joint_{};
  Table conditional_{};
  double min_conditional_ = 0.0;
  double redundancy_ = kDefaultRedundancy;
};

/// Mean per-letter log2-likelihood under the bigram model (first letter by
/// its unigram). Codes outside the alphabet cost kBadSymbolLog2 and restart
/// the chain. The empty string scores 0. Throws if the length is not a
/// multiple of 5.
double plausibility_score(const LanguageModel& lm, const BitString& p);

bool is_plausible(const LanguageModel& lm, const BitString& p, double threshold);

/// Shannon unicity distance H(K) / D, in letters.
double unicity_distance(double key_entropy_bits, double redundancy_bits_per_letter);

struct Calibration {
  /// Equal-error point: the fraction of English windows scoring below it
  /// matches the fraction of random strings scoring at or above it.
  double threshold = 0.0;
  double english_mean = 0.0;
  double random_mean = 0.0;
  double midpoint = 0.0;
  /// Error rates of `threshold` on the calibration samples themselves.
  double english_miss_rate = 0.0;
  double random_accept_rate = 0.0;
  std::size_t samples = 0;
  std::size_t letters = 0;
};

/// Scores `samples` English windows of `letters` letters cut from `corpus`
/// and as many uniformly random bit strings of the same length, and places
/// the threshold at their equal-error point. The midpoint of the two means
/// is reported alongside.
Calibration calibrate_threshold(const LanguageModel& lm, std::string_view corpus, std::size_t letters,
                                std::size_t samples, std::uint64_t seed);

/// Calibration of the shipped model against the shipped corpus: 12-letter
/// windows, 10^4 samples each side, fixed seed. Computed once per process.
const Calibration& default_calibration();
inline double default_threshold() { return default_calibration().threshold; }

/// The shipped English sample text (comment lines removed).
std::string_view corpus_text();
/// Normalized corpus sentences, one per non-comment line.
std::vector<std::string> corpus_sentences();

}  // namespace pdcbench::lang
