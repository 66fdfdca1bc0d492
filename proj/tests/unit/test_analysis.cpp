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
#include <sstream>

#include "oracles.hpp"
#include "pdcbench/analysis.hpp"
#include "pdcbench/rng.hpp"

using namespace pdcbench;

TEST(Analysis, AvalancheOracle) {
  // Recount one trial by hand.
  auto rep = measure_avalanche(CipherSpec::spn(4), 4000, 5);
  EXPECT_EQ(rep.per_bit.size(), 16u);
  EXPECT_EQ(rep.trials, 4000u);
  double m = 0;
  for (double p : rep.per_bit) m += p / 16;
  EXPECT_NEAR(rep.mean, m, 1e-12);
  EXPECT_NEAR(rep.mean, 0.5, 0.03);
  auto weak = measure_avalanche(CipherSpec::spn(1), 4000, 5);
  EXPECT_LT(weak.mean, 0.4);
}

TEST(Analysis, DatasetRecordsMatchDirectComputation) {
  auto metrics = all_metrics();
  auto data = generate_analysis_dataset(CipherSpec::spn(2), metrics, 300, 9);
  ASSERT_EQ(data.records.size(), 300u);
  Cipher c(data.spec);
  EXPECT_EQ(c.encrypt(data.p0, data.k0), data.c0);
  for (const auto& r : data.records) {
    auto k = BitString::from_uint(r.key, 16);
    ASSERT_NE(k, data.k0);
    auto p = c.decrypt(data.c0, k);
    auto h = data.column(MetricId::hamming());
    EXPECT_EQ(r.key_distances[h].value, oracle::hamming(k.to_string(), data.k0.to_string()));
    EXPECT_EQ(r.plaintext_distances[h].value, oracle::hamming(p.to_string(), data.p0.to_string()));
  }
  auto self = make_record(c, metrics, data.k0, data.p0, data.c0, data.k0.to_uint(), 0);
  for (const auto& d : self.key_distances) EXPECT_EQ(d.value, 0.0);
  for (const auto& d : self.plaintext_distances) EXPECT_EQ(d.value, 0.0);
}

TEST(Analysis, DatasetIndependentOfWorkers) {
  auto a = generate_analysis_dataset(CipherSpec::spn(4), {MetricId::hamming()}, 500, 3, 1);
  auto b = generate_analysis_dataset(CipherSpec::spn(4), {MetricId::hamming()}, 500, 3, 3);
  std::ostringstream sa, sb;
  write_dataset_csv(sa, a);
  write_dataset_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_THROW(generate_analysis_dataset(CipherSpec::spn(4), {MetricId::hamming()}, 65536, 3), std::invalid_argument);
}

TEST(Analysis, ZeroCosineIsFlaggedNotThrown) {
  auto d = dataset_distance(MetricId::cosine(), BitString(8), BitString::parse("00010000"));
  EXPECT_FALSE(d.finite);
  EXPECT_TRUE(std::isnan(d.value));
}

TEST(Analysis, ScatterSpearmanMatchesOracle) {
  auto data = generate_analysis_dataset(CipherSpec::spn(1), {MetricId::hamming()}, 400, 4);
  auto s = project_scatter(data, MetricId::hamming(), MetricId::hamming());
  std::vector<double> x, y;
  for (auto [a, b] : s.points) {
    x.push_back(a);
    y.push_back(b);
  }
  EXPECT_NEAR(s.spearman(), oracle::spearman(x, y), 1e-12);
}

TEST(Analysis, Spikedness) {
  std::vector<double> flat(8, 0.125);
  EXPECT_NEAR(spikedness(flat), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(peak_ratio(flat), 1.0);
  std::vector<double> spike(8, 0.0);
  spike[3] = 1.0;
  EXPECT_NEAR(spikedness(spike), 3.0, 1e-12);
  std::vector<double> w = {0.5, 0.25, 0.125, 0.125};
  EXPECT_NEAR(spikedness(w), oracle::kl_uniform_bits(w), 1e-12);
  EXPECT_THROW(spikedness(std::vector<double>{0.5, 0.4}), std::invalid_argument);
  EXPECT_THROW(spikedness(std::vector<double>{1.5, -0.5}), std::invalid_argument);
}

TEST(Analysis, CsvHasMetadataAndHeader) {
  auto data = generate_analysis_dataset(CipherSpec::spn(4), {MetricId::hamming(), MetricId::lcs()}, 3, 1);
  std::ostringstream out;
  write_dataset_csv(out, data, {"seed=1"});
  std::istringstream in(out.str());
  std::string l1, l2;
  std::getline(in, l1);
  std::getline(in, l2);
  EXPECT_EQ(l1, "# seed=1");
  EXPECT_EQ(l2, "key_index,key_hex,hamming_dk,lcs_dk,hamming_dp,lcs_dp");
}
