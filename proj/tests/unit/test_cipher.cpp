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

#include <fstream>
#include <set>

#include "oracles.hpp"
#include "pdcbench/cipher.hpp"
#include "pdcbench/rng.hpp"
#include "pdcbench/stats.hpp"

using namespace pdcbench;

TEST(Cipher, SpnMatchesBitLevelOracle) {
  Rng rng(21);
  for (int rounds : {1, 2, 4, 7}) {
    Cipher c(CipherSpec::spn(rounds));
    for (int i = 0; i < 2000; ++i) {
      auto p = static_cast<std::uint16_t>(rng()), k = static_cast<std::uint16_t>(rng());
      ASSERT_EQ(c.encrypt_block(p, k), oracle::spn_encrypt(p, k, rounds, oracle::kPresentSbox, oracle::kSpnPbox));
    }
  }
}

TEST(Cipher, SpeckPublishedVector) {
  std::ifstream in(PDCBENCH_TEST_DATA "/speck32_64.vec");
  ASSERT_TRUE(in);
  auto vecs = read_test_vectors(in);
  ASSERT_EQ(vecs.size(), 1u);
  auto spec = CipherSpec::arx(22);
  for (const auto& v : vecs) {
    EXPECT_EQ(encrypt(spec, v.plaintext, v.key), v.ciphertext);
    EXPECT_EQ(decrypt(spec, v.ciphertext, v.key), v.plaintext);
    EXPECT_EQ(oracle::speck32_encrypt(static_cast<std::uint32_t>(v.plaintext.to_uint()), v.key.to_uint(), 22),
              v.ciphertext.to_uint());
  }
}

TEST(Cipher, ReducedSpeckMatchesOracle) {
  Rng rng(22);
  for (int rounds : {1, 3, 5, 8}) {
    Cipher c(CipherSpec::arx(rounds));
    for (int i = 0; i < 500; ++i) {
      auto p = rng() & 0xFFFFFFFFu;
      auto k = rng();
      ASSERT_EQ(c.encrypt_block(p, k), oracle::speck32_encrypt(static_cast<std::uint32_t>(p), k, rounds));
    }
  }
}

TEST(Cipher, RoundTrip) {
  Rng rng(23);
  for (auto spec : {CipherSpec::spn(4), CipherSpec::spn(1), CipherSpec::arx(22), CipherSpec::arx(5)}) {
    Cipher c(spec);
    for (int i = 0; i < 2000; ++i) {
      auto p = random_bits(rng, static_cast<std::size_t>(c.block_bits()));
      auto k = random_bits(rng, static_cast<std::size_t>(c.key_bits()));
      ASSERT_EQ(c.decrypt(c.encrypt(p, k), k), p);
    }
  }
}

TEST(Cipher, DegenerateSpn) {
  // Identity layers and K = 0 leave only the round constants: c = p ^ rc(1).
  auto spec = CipherSpec::spn(1, identity_sbox(), identity_pbox());
  Cipher c(spec);
  EXPECT_EQ(spn_round_constant(0), 0u);
  for (std::uint64_t p : {0x0000u, 0x1234u, 0xFFFFu}) EXPECT_EQ(c.encrypt_block(p, 0), p ^ spn_round_constant(1));
}

TEST(Cipher, Validation) {
  EXPECT_THROW(Cipher(CipherSpec::spn(0)), std::invalid_argument);
  auto bad = CipherSpec::spn(2);
  bad.sbox[0] = bad.sbox[1];
  EXPECT_THROW(Cipher{bad}, std::invalid_argument);
  bad = CipherSpec::spn(2);
  bad.pbox[0] = 1;
  EXPECT_THROW(Cipher{bad}, std::invalid_argument);
  Cipher c(CipherSpec::spn(2));
  EXPECT_THROW(c.encrypt(BitString(15), BitString(16)), std::invalid_argument);
  EXPECT_THROW(c.encrypt(BitString(16), BitString(17)), std::invalid_argument);
}

TEST(Cipher, ConfigRoundTrip) {
  auto spec = CipherSpec::spn(3);
  EXPECT_EQ(CipherSpec::from_config(Config::parse(spec.to_config())), spec);
  auto arx = CipherSpec::arx(7);
  EXPECT_EQ(CipherSpec::from_config(Config::parse(arx.to_config())), arx);
  EXPECT_THROW(CipherSpec::from_config(Config::parse("[cipher]\nfamily = des\n")), ConfigError);
}

TEST(Cipher, WrongKeyCollisionsAreRare) {
  Rng rng(24);
  Cipher c(CipherSpec::arx(22));
  int same = 0;
  for (int i = 0; i < 10000; ++i) {
    auto p = rng() & 0xFFFFFFFFu, k = rng();
    auto k2 = k ^ (std::uint64_t{1} << uniform_below(rng, 64));
    same += c.decrypt_block(c.encrypt_block(p, k), k2) == p;
  }
  EXPECT_LE(same, 1);
}

TEST(Cipher, WrongKeyMarginalsUniform) {
  // Fixed c, all 2^16 keys: each plaintext nibble value should be uniform.
  Cipher c(CipherSpec::spn(4));
  std::vector<double> counts(16, 0.0);
  for (std::uint64_t k = 0; k < 65536; ++k) counts[c.decrypt_block(0x3C5A, k) >> 12] += 1;
  std::vector<double> expected(16, 65536.0 / 16);
  EXPECT_GT(stats::chi_square_gof(counts, expected).p_value, 1e-3);
}

TEST(Cipher, KeyspaceEnumerate) {
  KeySpace ks{4};
  auto a = keyspace_enumerate(ks, 0, 2);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].to_string(), "0000");
  EXPECT_EQ(a[1].to_string(), "0001");
  EXPECT_EQ(keyspace_enumerate(ks, 15, 1)[0].to_string(), "1111");
  EXPECT_THROW(keyspace_enumerate(ks, 15, 2), std::out_of_range);
  auto all = keyspace_enumerate(KeySpace{10}, 0, 1024);
  EXPECT_EQ(std::set<BitString>(all.begin(), all.end()).size(), 1024u);
}

TEST(Cipher, EcbBlocks) {
  Rng rng(25);
  Cipher c(CipherSpec::spn(4));
  auto p = random_bits(rng, 48), k = random_bits(rng, 16);
  auto ct = c.encrypt_ecb(p, k);
  EXPECT_EQ(ct.slice(16, 16), c.encrypt(p.slice(16, 16), k));
  EXPECT_EQ(c.decrypt_ecb(ct, k), p);
  EXPECT_EQ(from_blocks(c.decrypt_ecb_words(to_blocks(ct, 16), k.to_uint()), 16), p);
}
