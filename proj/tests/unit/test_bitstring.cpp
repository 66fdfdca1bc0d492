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

#include "pdcbench/bitstring.hpp"
#include "pdcbench/rng.hpp"

using pdcbench::BitString;

TEST(BitString, ParseBinaryIgnoresWhitespace) {
  auto s = BitString::parse("1010 0110");
  EXPECT_EQ(s.size(), 8u);
  EXPECT_EQ(s.to_string(), "10100110");
  EXPECT_EQ(s.to_uint(), 0xA6u);
}

TEST(BitString, HexKeepsLeadingZeros) {
  auto s = BitString::parse("12:00f");
  EXPECT_EQ(s.to_string(), "000000001111");
  EXPECT_EQ(BitString::parse(s.to_hex()), s);
  EXPECT_THROW(BitString::parse("x:00"), std::invalid_argument);
  EXPECT_THROW(BitString::parse("10a1"), std::invalid_argument);
}

TEST(BitString, HexRoundTripRandomLengths) {
  pdcbench::Rng rng(7);
  for (std::size_t len = 0; len < 70; ++len) {
    auto s = pdcbench::random_bits(rng, len);
    EXPECT_EQ(BitString::parse(s.to_hex()), s) << len;
  }
}

TEST(BitString, SliceConcatXor) {
  auto a = BitString::parse("110010");
  EXPECT_EQ(a.slice(1, 3).to_string(), "100");
  EXPECT_EQ(a.concat(BitString::parse("01")).to_string(), "11001001");
  EXPECT_EQ((a ^ BitString::parse("111111")).to_string(), "001101");
  EXPECT_EQ(a.flipped(0).to_string(), "010010");
  EXPECT_EQ(a.popcount(), 3u);
  EXPECT_THROW(a.slice(4, 3), std::out_of_range);
  EXPECT_THROW(a ^ BitString::parse("1"), std::invalid_argument);
}

TEST(BitString, FromUintIsMsbFirst) {
  EXPECT_EQ(BitString::from_uint(5, 4).to_string(), "0101");
  EXPECT_EQ(BitString::from_uint(0xFFFF, 16).popcount(), 16u);
}
