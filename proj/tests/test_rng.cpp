/*
Copyright 2026 The FRAM-RIR Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/


#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "framrir/rng.hpp"

namespace framrir {
namespace {

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::Generate({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (Philox4x32::Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto out = Philox4x32::Generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                        {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (Philox4x32::Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPiDigits) {
  const auto out = Philox4x32::Generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                        {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (Philox4x32::Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, KeyFromSeedSplitsWords) {
  const auto key = Philox4x32::KeyFromSeed(0x0123456789abcdefULL);
  EXPECT_EQ(key[0], 0x89abcdefu);
  EXPECT_EQ(key[1], 0x01234567u);
}

TEST(UniformOpenClosed, Endpoints) {
  EXPECT_EQ(UniformOpenClosed(0, 0), 0x1.0p-53);
  EXPECT_EQ(UniformOpenClosed(0xffffffff, 0xffffffff), 1.0);
}

TEST(CellUniforms, DeterministicAndInRange) {
  for (std::uint32_t i = 0; i < 1000; ++i) {
    const auto a = CellUniforms(42, RngDomain::kImageGeometry, 3, i);
    const auto b = CellUniforms(42, RngDomain::kImageGeometry, 3, i);
    EXPECT_EQ(a, b);
    for (double u : a) {
      EXPECT_GT(u, 0.0);
      EXPECT_LE(u, 1.0);
    }
  }
}

TEST(CellUniforms, StreamsAndDomainsDiffer) {
  const auto base = CellUniforms(7, RngDomain::kImageGeometry, 0, 0);
  EXPECT_NE(base, CellUniforms(7, RngDomain::kImageGeometry, 1, 0));
  EXPECT_NE(base, CellUniforms(7, RngDomain::kImageGeometry, 0, 1));
  EXPECT_NE(base, CellUniforms(7, RngDomain::kSequential, 0, 0));
  EXPECT_NE(base, CellUniforms(8, RngDomain::kImageGeometry, 0, 0));
}

TEST(CounterRng, ReproducibleSequence) {
  CounterRng a(123), b(123), c(124);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs = differs || x != c();
  }
  EXPECT_TRUE(differs);
}

TEST(CounterRng, UniformDegenerateRangeIsExact) {
  CounterRng rng(1);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(rng.Uniform(0.37, 0.37), 0.37);
}

TEST(CounterRng, UniformStaysInRange) {
  CounterRng rng(5);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.Uniform(0.0, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(CounterRng, UniformIntCoversRange) {
  CounterRng rng(9);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = rng.UniformInt(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    ++counts[static_cast<std::size_t>(v + 3)];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  EXPECT_EQ(rng.UniformInt(4, 4), 4);
}

TEST(DeriveSeed, DistinctChildren) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 32; ++a) {
    for (std::uint64_t b = 0; b < 32; ++b) seen.insert(DeriveSeed(99, a, b));
  }
  EXPECT_EQ(seen.size(), 32u * 32u);
  EXPECT_EQ(DeriveSeed(99, 1, 2), DeriveSeed(99, 1, 2));
  EXPECT_NE(DeriveSeed(99, 1, 2), DeriveSeed(100, 1, 2));
}

}  // namespace
}  // namespace framrir
