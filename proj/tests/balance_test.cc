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

#include "emopipe/balance.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "emopipe/error.h"
#include "emopipe/utf8.h"

namespace emopipe {
namespace {

struct TableRow {
  const char* name;
  std::size_t count0;
  std::size_t count1;
  double published_w0;
};

// Published class counts and weights (weight of class 0, class 1 is 1).
constexpr TableRow kPublishedWeights[] = {
    {"anger", 2590, 13986, 5},   {"fear", 1520, 12768, 8},   {"happiness", 1440, 14562, 9},
    {"hatred", 1750, 12263, 7},  {"sadness", 2990, 13643, 4}, {"wonder", 1935, 14512, 7},
};

TEST(ClassWeightsTest, PublishedRows) {
  for (const auto& row : kPublishedWeights) {
    // Class 1 dominates in every row, so class 0 carries the ratio.
    const ClassWeights w = DeriveClassWeights(row.count0, row.count1);
    EXPECT_EQ(w.w1, 1.0);
    if (std::string(row.name) == "happiness") {
      // floor(14562 / 1440) = 10; the published value is 9.
      EXPECT_EQ(w.w0, 10.0);
      EXPECT_NE(w.w0, row.published_w0);
    } else {
      EXPECT_EQ(w.w0, row.published_w0) << row.name;
    }
  }
}

TEST(ClassWeightsTest, Examples) {
  EXPECT_EQ(DeriveClassWeights(2590, 13986), (ClassWeights{5, 1}));
  EXPECT_EQ(DeriveClassWeights(1750, 12263), (ClassWeights{7, 1}));
  EXPECT_EQ(DeriveClassWeights(40, 40), (ClassWeights{1, 1}));
  EXPECT_EQ(DeriveClassWeights(100, 7), (ClassWeights{1, 14}));
  EXPECT_EQ(DeriveClassWeights(10, 19), (ClassWeights{1, 1}));
}

TEST(ClassWeightsTest, DegenerateClass) {
  EXPECT_THROW(DeriveClassWeights(0, 5), ValidationError);
  EXPECT_THROW(DeriveClassWeights(5, 0), ValidationError);
}

TEST(ClassWeightsTest, ScaleInvariantAndAnchored) {
  for (std::size_t a = 1; a < 40; ++a) {
    for (std::size_t b = 1; b < 40; ++b) {
      const ClassWeights w = DeriveClassWeights(a, b);
      EXPECT_TRUE(w.w0 == 1.0 || w.w1 == 1.0);
      if (a >= b) {
        EXPECT_EQ(w.w0, 1.0);
      }
      if (b >= a) {
        EXPECT_EQ(w.w1, 1.0);
      }
      for (std::size_t k = 2; k < 5; ++k) EXPECT_EQ(DeriveClassWeights(k * a, k * b), w);
    }
  }
}

std::vector<LabeledSample> Samples(const std::vector<std::size_t>& lengths) {
  std::vector<LabeledSample> s;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    std::vector<std::string> toks(lengths[i], "w");
    s.push_back({.id = "s" + std::to_string(i), .text = utf8::Join(toks, " "), .labels = {0}});
  }
  return s;
}

TEST(UndersampleTest, KeepShortFrequency) {
  const auto s = Samples({1, 9});
  int short_kept = 0;
  constexpr int kSeeds = 10000;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const auto out = Undersample(s, 1, seed);
    ASSERT_EQ(out.size(), 1u);
    short_kept += out[0].id == "s0";
  }
  const double f = static_cast<double>(short_kept) / kSeeds;
  EXPECT_NEAR(f, 0.9, 3 * std::sqrt(0.9 * 0.1 / kSeeds));
}

TEST(UndersampleTest, KeepFrequencyFollowsInverseLength) {
  const auto s = Samples({1, 2, 4});
  const double w[] = {1.0, 0.5, 0.25};
  const double total = w[0] + w[1] + w[2];
  std::map<std::string, int> kept;
  constexpr int kSeeds = 10000;
  for (int seed = 0; seed < kSeeds; ++seed) ++kept[Undersample(s, 1, seed)[0].id];
  for (int i = 0; i < 3; ++i) {
    const double p = w[i] / total;
    EXPECT_NEAR(kept["s" + std::to_string(i)] / double(kSeeds), p,
                3 * std::sqrt(p * (1 - p) / kSeeds));
  }
}

TEST(UndersampleTest, ExactSizeOrderAndSubset) {
  const auto s = Samples({3, 1, 4, 1, 5, 9, 2, 6, 5, 3});
  for (std::size_t target = 0; target <= s.size(); ++target) {
    const auto out = Undersample(s, target, 42);
    ASSERT_EQ(out.size(), target);
    std::size_t j = 0;
    for (const auto& o : out) {
      while (j < s.size() && s[j].id != o.id) ++j;
      ASSERT_LT(j, s.size()) << "not an ordered subset";
      EXPECT_EQ(s[j], o);
      ++j;
    }
  }
  EXPECT_EQ(Undersample(s, s.size(), 1), s);
  EXPECT_TRUE(Undersample(s, 0, 1).empty());
  EXPECT_EQ(Undersample(s, 5, 8), Undersample(s, 5, 8));
  EXPECT_THROW(Undersample(s, s.size() + 1, 1), ValidationError);
}

TEST(UndersampleTest, RejectsEmptyText) {
  std::vector<LabeledSample> s = {{.id = "a", .text = "   ", .labels = {0}}};
  EXPECT_THROW(Undersample(s, 1, 1), ValidationError);
}

TEST(UndersampleMajorityTest, KeepsMinority) {
  std::vector<LabeledSample> s;
  for (int i = 0; i < 100; ++i) {
    s.push_back({.id = "s" + std::to_string(i), .text = "a b", .labels = {std::uint8_t(i % 10 == 0)}});
  }
  const auto ds = LabeledDataset::Binary(Emotion::kSadness, s);
  const auto out = UndersampleMajority(ds, 0, 30, 4);
  EXPECT_EQ(out.CountLabel(0, 1), 10u);
  EXPECT_EQ(out.CountLabel(0, 0), 30u);
  EXPECT_EQ(out.target(), Emotion::kSadness);
}

}  // namespace
}  // namespace emopipe
