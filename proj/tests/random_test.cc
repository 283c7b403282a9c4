//
// Copyright 2026 The Emopipe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "emopipe/random.h"

#include <gtest/gtest.h>

#include <set>
#include <vector>

namespace emopipe {
namespace {

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Next(), b.Next());
}

TEST(RngTest, UniformRanges) {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double v = rng.UniformOpenZero();
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(RngTest, BelowCoversRange) {
  Rng rng(3);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = rng.Below(7);
    ASSERT_LT(x, 7u);
    ++hist[x];
  }
  // Each bucket expects 1000 with sd ~ 29.
  for (int h : hist) EXPECT_NEAR(h, 1000, 150);
  EXPECT_EQ(rng.Below(1), 0u);
}

TEST(RngTest, BernoulliEdges) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(rng.Bernoulli(0.0));
    EXPECT_TRUE(rng.Bernoulli(1.0));
  }
}

TEST(DeriveSeedTest, StreamsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(DeriveSeed(5, s));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(DeriveSeed(1, 2), DeriveSeed(2, 1));
  EXPECT_EQ(DeriveSeed(9, 9), DeriveSeed(9, 9));
}

}  // namespace
}  // namespace emopipe
