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

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "pdcbench/analysis.hpp"
#include "pdcbench/experiments.hpp"
#include "pdcbench/rng.hpp"
#include "pdcbench/search.hpp"

using namespace pdcbench;

TEST(SearchState, RejectsDuplicates) {
  SearchState s(16);
  s.record(5, 1.0);
  EXPECT_THROW(s.record(5, 2.0), std::logic_error);
  s.set_found(5, BitString(16));
  EXPECT_THROW(s.set_found(6, BitString(16)), std::logic_error);
  EXPECT_EQ(s.keys_tried(), 1u);
  EXPECT_EQ(s.key_string(5).to_string(), "0000000000000101");
}

TEST(Blind, SequentialStopsAtTheKey) {
  Cipher c(CipherSpec::spn(4));
  auto p = BitString::from_uint(0x1234, 16);
  auto k = BitString::from_uint(777, 16);
  auto ct = c.encrypt(p, k);
  // Exact-match stop on a single block may hit an earlier spurious key; two
  // blocks make the key unique with overwhelming probability.
  auto p2 = p.concat(BitString::from_uint(0xBEEF, 16));
  auto ct2 = c.encrypt_ecb(p2, k);
  auto st = blind_bruteforce(c.spec(), ct2, [&](const BitString& x) { return x == p2; }, SearchOrder::sequential,
                             65536);
  ASSERT_TRUE(st.found());
  EXPECT_EQ(st.found()->key, 777u);
  EXPECT_EQ(st.keys_tried(), 778u);
  (void)ct;
}

TEST(Blind, RandomOrderVisitsEachKeyOnce) {
  auto st = blind_bruteforce(CipherSpec::spn(1), BitString(16), [](const BitString&) { return false; },
                             SearchOrder::seeded_random, 1u << 20, 4);
  EXPECT_EQ(st.keys_tried(), 65536u);
  std::set<std::uint64_t> keys;
  for (const auto& t : st.tried()) keys.insert(t.key);
  EXPECT_EQ(keys.size(), 65536u);
}

TEST(Rank, OrderMatchesDirectScoring) {
  Cipher c(CipherSpec::spn(2));
  Rng rng(41);
  auto cq = random_bits(rng, 16);
  PlausibleSet ps{0, {random_bits(rng, 16), random_bits(rng, 16)}};
  std::vector<std::uint64_t> keys;
  for (int i = 0; i < 200; ++i) keys.push_back(rng() & 0xFFFF);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  auto r = rank_trial_keys(c, cq, keys, ps, MetricId::hamming());
  ASSERT_EQ(r.ordered.size(), keys.size());
  for (std::size_t i = 0; i < r.ordered.size(); ++i) {
    auto p = c.decrypt(cq, BitString::from_uint(r.ordered[i].key, 16)).to_string();
    int want = std::min(oracle::hamming(p, ps.candidates[0].to_string()), oracle::hamming(p, ps.candidates[1].to_string()));
    EXPECT_EQ(r.ordered[i].min_distance, want);
    if (i > 0) {
      const auto& a = r.ordered[i - 1];
      const auto& b = r.ordered[i];
      EXPECT_TRUE(a.min_distance < b.min_distance || (a.min_distance == b.min_distance && a.key < b.key));
    }
  }
  PlausibleSet wrong{0, {BitString(8)}};
  EXPECT_THROW(rank_trial_keys(c, cq, keys, wrong, MetricId::hamming()), std::invalid_argument);
  EXPECT_NO_THROW(rank_trial_keys(c, cq, keys, wrong, MetricId::levenshtein()));
}

TEST(Rankers, NeverReproposeObservedKeys) {
  Cipher c(CipherSpec::spn(1));
  Rng rng(42);
  auto cq = random_bits(rng, 16);
  PlausibleSet ps{0, {random_bits(rng, 16)}};
  for (const auto& name : builtin_ranker_names()) {
    auto r = make_ranker(name);
    r->reset(16, 3);
    std::set<std::uint64_t> seen;
    std::vector<std::uint64_t> first;
    for (int i = 0; i < 64; ++i) first.push_back(static_cast<std::uint64_t>(i) * 1000);
    seen.insert(first.begin(), first.end());
    r->observe(rank_trial_keys(c, cq, first, ps, MetricId::hamming()), 0);
    for (int round = 1; round < 20; ++round) {
      auto prop = r->propose(64);
      ASSERT_FALSE(prop.empty()) << name;
      for (auto k : prop) {
        ASSERT_LT(k, 65536u);
        ASSERT_TRUE(seen.insert(k).second) << name << " reproposed " << k;
      }
      r->observe(rank_trial_keys(c, cq, prop, ps, MetricId::hamming()), round);
    }
    std::vector<std::uint64_t> untried;
    for (std::uint64_t k = 0; k < 65536; ++k) {
      if (!seen.contains(k)) untried.push_back(k);
    }
    auto w = r->weights(untried);
    ASSERT_EQ(w.size(), untried.size());
    double s = 0;
    for (double x : w) {
      ASSERT_GE(x, 0.0);
      s += x;
    }
    EXPECT_NEAR(s, 1.0, 1e-9) << name;
  }
  EXPECT_THROW(make_ranker("annealing"), std::invalid_argument);
}

TEST(Rankers, RandomWeightsAreFlat) {
  auto r = make_random_ranker();
  r->reset(8, 1);
  std::vector<std::uint64_t> untried(200);
  for (std::size_t i = 0; i < untried.size(); ++i) untried[i] = i;
  EXPECT_NEAR(spikedness(r->weights(untried)), 0.0, 1e-12);
}

TEST(Rankers, HillClimbStopsAtZero) {
  auto r = make_hill_climb_ranker();
  r->reset(16, 1);
  RankedKeys o{16, {{42, 0.0}, {43, 3.0}}};
  r->observe(o, 0);
  EXPECT_TRUE(r->propose(16).empty());
}

TEST(Rankers, HillClimbProposesNeighboursOfBest) {
  auto r = make_hill_climb_ranker();
  r->reset(16, 1);
  RankedKeys o{16, {{0x00F0, 1.0}, {0x1234, 5.0}}};
  r->observe(o, 0);
  auto prop = r->propose(16);
  ASSERT_EQ(prop.size(), 16u);
  for (auto k : prop) EXPECT_EQ(std::popcount(k ^ 0x00F0u), 1);
}

TEST(BitRegression, RecoversLinearModel) {
  Rng rng(43);
  std::vector<std::uint64_t> keys;
  std::vector<double> y;
  for (int i = 0; i < 500; ++i) {
    auto k = rng() & 0xFF;
    keys.push_back(k);
    double v = 2.0;
    for (int b = 0; b < 8; ++b) v += ((k >> b) & 1 ? 1.0 : -1.0) * 0.1 * (b + 1);
    y.push_back(v);
  }
  auto m = BitRegression::fit(8, keys, y, 1e-9);
  for (std::uint64_t k : {0u, 17u, 255u}) {
    double v = 2.0;
    for (int b = 0; b < 8; ++b) v += ((k >> b) & 1 ? 1.0 : -1.0) * 0.1 * (b + 1);
    EXPECT_NEAR(m.predict(k), v, 1e-6);
  }
}

TEST(Ai2, FindsKeyOnLeakyTarget) {
  auto spec = CipherSpec::spn(1);
  auto t = make_attack_target(spec, 5, 0);
  auto ranker = make_hill_climb_ranker();
  Ai2Options o;
  o.max_rounds = 1100;
  o.seed = 2;
  o.track_spikedness = true;
  auto st = ai2_search(spec, t.ciphertext, t.plausible, MetricId::hamming(), *ranker, o);
  ASSERT_TRUE(st.found());
  EXPECT_EQ(st.found()->key, t.key);
  ASSERT_FALSE(st.trace().empty());
  double prev = INFINITY;
  std::uint64_t prev_cum = 0;
  for (const auto& row : st.trace()) {
    EXPECT_LE(row.best_min_distance, prev);
    EXPECT_GE(row.batch_min_distance, row.best_min_distance);
    EXPECT_GT(row.keys_tried_cum, prev_cum);
    EXPECT_GE(row.spikedness, 0.0);
    prev = row.best_min_distance;
    prev_cum = row.keys_tried_cum;
  }
  EXPECT_EQ(st.trace().back().keys_tried_cum, st.keys_tried());
  std::ostringstream csv;
  write_trace_csv(csv, st);
  EXPECT_NE(csv.str().find("round,keys_tried_cum,best_min_distance,spikedness,metric_id"), std::string::npos);
}

TEST(Ai2, KnownPlaintextMode) {
  auto spec = CipherSpec::spn(4);
  auto t = make_attack_target(spec, 6, 0);
  PlausibleSet only{0, {t.plaintext}};
  auto ranker = make_random_ranker();
  Ai2Options o;
  o.max_rounds = 1100;
  o.known_plaintext = true;
  auto st = ai2_search(spec, t.ciphertext, only, MetricId::hamming(), *ranker, o);
  ASSERT_TRUE(st.found());
  EXPECT_EQ(st.found()->key, t.key);
}

TEST(Ai2, MetricSwitchOnStagnation) {
  auto spec = CipherSpec::spn(4);
  auto t = make_attack_target(spec, 7, 0);
  auto ranker = make_hill_climb_ranker();
  Ai2Options o;
  o.max_rounds = 30;
  o.stagnation_rounds = 2;
  o.fallback_metrics = {MetricId::levenshtein()};
  auto st = ai2_search(spec, t.ciphertext, t.plausible, MetricId::hamming(), *ranker, o);
  bool switched = std::any_of(st.trace().begin(), st.trace().end(),
                              [](const TraceRow& r) { return r.metric == "levenshtein"; });
  EXPECT_TRUE(switched || st.found());
}

TEST(ReverseAvalanche, SeriesInvariants) {
  Rng rng(44);
  auto spec = CipherSpec::spn(4);
  for (int i = 0; i < 50; ++i) {
    auto c = random_bits(rng, 16), k0 = random_bits(rng, 16), k1 = random_bits(rng, 16);
    auto s = reverse_avalanche_series(spec, c, k0, k1, 9);
    ASSERT_EQ(s.size(), hamming(k0, k1) + 1);
    EXPECT_EQ(s.front().key, k0);
    EXPECT_EQ(s.back().key, k1);
    for (std::size_t j = 1; j < s.size(); ++j) EXPECT_EQ(hamming(s[j - 1].key, s[j].key), 1u);
    for (const auto& pt : s) EXPECT_EQ(pt.plaintext, decrypt(spec, c, pt.key));
  }
}

TEST(ReverseAvalanche, ProbeOnPerfectChain) {
  // Plaintexts one flip apart in a line: the true order is the unique optimum.
  std::vector<BitString> pts;
  BitString x(12);
  for (std::size_t i = 0; i < 6; ++i) {
    pts.push_back(x);
    x = x.flipped(i);
  }
  auto r = reverse_avalanche_probe(pts, MetricId::hamming(), 3);
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(r.order_recovered);
  EXPECT_EQ(r.minimal_orders, 1u);
  EXPECT_NEAR(r.chance, 2.0 / 720.0, 1e-15);
  EXPECT_NEAR(r.spearman, 1.0, 1e-12);
  std::vector<BitString> same(5, BitString(8));
  EXPECT_TRUE(reverse_avalanche_probe(same, MetricId::hamming(), 3).degenerate);
}
