// Copyright 2026 The rffkd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rffkd/rng.h"

#include <cmath>
#include <cstdint>
#include <set>

#include <gtest/gtest.h>

namespace rffkd {
namespace {

using Block = std::array<std::uint32_t, 4>;

// Known-answer vectors published with the reference Philox implementation.
TEST(Philox, KnownAnswerZero) {
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerOnes) {
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                       {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPi) {
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                       {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(SplitMix, FirstOutputOfZeroState) {
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafull);
}

TEST(CounterStream, AddressableAndDeterministic) {
  const CounterStream a(42), b(42);
  EXPECT_EQ(a.bits(7, 3), b.bits(7, 3));
  EXPECT_EQ(a.normal(1000, 2), b.normal(1000, 2));
  EXPECT_NE(a.bits(7, 3), a.bits(3, 7));
  EXPECT_NE(CounterStream(42).key(), CounterStream(43).key());
  EXPECT_NE(CounterStream(42, 0).key(), CounterStream(42, 1).key());
}

TEST(CounterStream, ChildrenAreDistinct) {
  const CounterStream root(9);
  std::set<std::uint64_t> keys{root.key()};
  for (std::uint64_t i = 0; i < 64; ++i) {
    keys.insert(root.child(i).key());
    keys.insert(root.child(i).child(0).key());
  }
  EXPECT_EQ(keys.size(), 129u);
  EXPECT_NE(root.child(1).child(2).key(), root.child(2).child(1).key());
}

TEST(CounterStream, UniformRanges) {
  const CounterStream s(5);
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const double u = s.uniform_open(i, 0);
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double v = s.uniform_left_open(i, 1);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(CounterStream, NormalMoments) {
  // Sample mean, variance and fourth moment of N(0,1) against their exact
  // values at 5 standard errors.
  const CounterStream s(11);
  const int n = 200000;
  double m1 = 0, m2 = 0, m4 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal(i, 0);
    ASSERT_TRUE(std::isfinite(z));
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  EXPECT_NEAR(m1, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(m2, 1.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(m4, 3.0, 5.0 * std::sqrt(96.0 / n));
}

TEST(CounterStream, NormalTailFrequency) {
  // P(|Z| > 2) = erfc(sqrt 2).
  const CounterStream s(12);
  const int n = 200000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += std::abs(s.normal(i, 1)) > 2.0;
  const double p = std::erfc(std::sqrt(2.0));
  EXPECT_NEAR(static_cast<double>(hits) / n, p, 5.0 * std::sqrt(p * (1 - p) / n));
}

}  // namespace
}  // namespace rffkd
