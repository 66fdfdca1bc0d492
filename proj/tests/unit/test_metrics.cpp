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


#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pdcbench/metrics.hpp"
#include "pdcbench/rng.hpp"

using namespace pdcbench;

namespace {
BitString B(const char* s) { return BitString::parse(s); }
}  // namespace

TEST(Metrics, HammingExamples) {
  EXPECT_EQ(hamming(B("1010"), B("1010")), 0u);
  EXPECT_EQ(hamming(B("1010"), B("0101")), 4u);
  EXPECT_EQ(hamming(B("0011"), B("1110")), 3u);
  EXPECT_THROW(hamming(B("01"), B("011")), std::invalid_argument);
}

TEST(Metrics, QSummarizeExamples) {
  EXPECT_EQ(q_summarize(B("101011001"), 3).to_string(), "110");
  EXPECT_EQ(q_summarize(B("111"), 3).to_string(), "1");
  EXPECT_EQ(q_summarize(B("001000110010101111001100011"), 3).to_string(), "001011001");
  // Leftover pair "10" is a tie.
  EXPECT_EQ(q_summarize(B("11110"), 3).to_string(), "10");
  EXPECT_THROW(q_summarize(BitString(), 3), std::invalid_argument);
  EXPECT_THROW(q_summarize(B("1010"), 4), std::invalid_argument);
}

TEST(Metrics, QSummaryDistanceExamples) {
  EXPECT_EQ(q_summary_distance(B("111111111"), B("111111110"), 3).value, 1.0);
  auto d = q_summary_distance(B("0"), B("1"), 3);
  EXPECT_FALSE(d.finite);
  EXPECT_EQ(d.value, 1.0);
  EXPECT_EQ(q_summary_distance(B("0110"), B("0110"), 5).value, 0.0);
}

TEST(Metrics, QSummaryAgreesWithOracleOnAll6BitPairs) {
  for (int q : {3, 5}) {
    for (std::uint64_t a = 0; a < 64; ++a) {
      for (std::uint64_t b = 0; b < 64; ++b) {
        auto want = oracle::q_summary_distance(oracle::bits_of(a, 6), oracle::bits_of(b, 6), q);
        auto got = q_summary_distance(BitString::from_uint(a, 6), BitString::from_uint(b, 6), q);
        ASSERT_EQ(got.value, want.value) << a << " " << b;
        ASSERT_EQ(got.finite, want.finite);
      }
    }
  }
}

TEST(Metrics, AgreeWithOracles) {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    auto lx = 1 + uniform_below(rng, 20);
    auto ly = i % 2 ? lx : 1 + uniform_below(rng, 20);
    auto x = random_bits(rng, lx), y = random_bits(rng, ly);
    auto sx = x.to_string(), sy = y.to_string();
    EXPECT_EQ(levenshtein(x, y), static_cast<std::size_t>(oracle::levenshtein(sx, sy)));
    EXPECT_EQ(lcs_length(x, y), static_cast<std::size_t>(oracle::lcs(sx, sy)));
    EXPECT_EQ(lcs_distance(x, y), lx + ly - 2 * static_cast<std::size_t>(oracle::lcs(sx, sy)));
    EXPECT_DOUBLE_EQ(jaccard_distance(x, y), oracle::jaccard(sx, sy));
    if (lx == ly) {
      EXPECT_EQ(hamming(x, y), static_cast<std::size_t>(oracle::hamming(sx, sy)));
      EXPECT_DOUBLE_EQ(euclidean_distance(x, y), oracle::euclidean(sx, sy));
      EXPECT_DOUBLE_EQ(manhattan_distance(x, y), oracle::manhattan(sx, sy));
      if (x.popcount() && y.popcount()) EXPECT_NEAR(cosine_distance(x, y), oracle::cosine(sx, sy), 1e-12);
    }
  }
}

TEST(Metrics, VectorMetricsCollapseToHamming) {
  Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    auto x = random_bits(rng, 32), y = random_bits(rng, 32);
    double h = static_cast<double>(hamming(x, y));
    EXPECT_EQ(manhattan_distance(x, y), h);
    EXPECT_EQ(std::round(euclidean_distance(x, y) * euclidean_distance(x, y)), h);
  }
}

TEST(Metrics, SpecExamples) {
  EXPECT_EQ(metric_eval(MetricId::jaccard(), B("1100"), B("1100")).value, 0.0);
  EXPECT_EQ(metric_eval(MetricId::manhattan(), B("1010"), B("0101")).value, 4.0);
  EXPECT_EQ(metric_eval(MetricId::levenshtein(), B("101"), B("111")).value, 1.0);
  EXPECT_EQ(jaccard_distance(B("0000"), B("00")), 0.0);
  EXPECT_THROW(cosine_distance(B("0000"), B("0100")), std::invalid_argument);
  EXPECT_THROW(metric_eval(MetricId::euclidean(), B("01"), B("011")), std::invalid_argument);
  EXPECT_NO_THROW(metric_eval(MetricId::lcs(), B("01"), B("011")));
}

TEST(Metrics, SphereSize) {
  EXPECT_EQ(sphere_size(4, 2), 6u);
  EXPECT_EQ(sphere_size(9, 0), 1u);
  EXPECT_EQ(sphere_size(6, 3), 20u);
  for (int n = 1; n <= 40; ++n) {
    std::uint64_t total = 0;
    for (int h = 0; h <= n; ++h) {
      EXPECT_EQ(sphere_size(n, h), oracle::binomial(n, h));
      total += sphere_size(n, h);
    }
    EXPECT_EQ(total, std::uint64_t{1} << n);
  }
  EXPECT_THROW(sphere_size(4, 5), std::invalid_argument);
  EXPECT_THROW(sphere_size(80, 40), std::overflow_error);
}

TEST(Metrics, NamesRoundTrip) {
  for (const auto& m : all_metrics(5)) EXPECT_EQ(MetricId::parse(m.name()), m);
  EXPECT_EQ(parse_metric_list("hamming, qsum3").size(), 2u);
  EXPECT_THROW(MetricId::parse("qsum4"), std::invalid_argument);
  EXPECT_THROW(MetricId::parse("manhatan"), std::invalid_argument);
}
