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

#include "emopipe/augment.h"

#include <gtest/gtest.h>

#include <cmath>

#include "emopipe/error.h"
#include "emopipe/utf8.h"
#include "test_util.h"

namespace emopipe {
namespace {

using testing::TempDir;
using testing::WriteFile;

AugmentConfig Zero(int n_aug) {
  return {.swap_p = 0, .replace_p = 0, .insert_p = 0, .delete_p = 0, .n_aug = n_aug};
}

LexiconProvider TinyLexicon() {
  return LexiconProvider({{"الف", {"ب", "پ"}}, {"ب", {"الف"}}, {"ت", {"ث"}}});
}

std::string Tokens(std::size_t n) {
  std::vector<std::string> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back("w" + std::to_string(i));
  return utf8::Join(t, " ");
}

TEST(DefaultConfigTest, TableValues) {
  const AugmentConfig anger = DefaultAugmentConfig(Emotion::kAnger);
  EXPECT_EQ(anger.swap_p, 0.6);
  EXPECT_EQ(anger.replace_p, 0.6);
  EXPECT_EQ(anger.insert_p, 0.3);
  EXPECT_EQ(anger.delete_p, 0.3);
  EXPECT_EQ(anger.n_aug, 10);
  const AugmentConfig fear = DefaultAugmentConfig(Emotion::kFear);
  EXPECT_EQ(fear.insert_p, 0.5);
  EXPECT_EQ(fear.delete_p, 0.4);
  EXPECT_EQ(fear.n_aug, 20);
  const AugmentConfig happy = DefaultAugmentConfig(Emotion::kHappiness);
  EXPECT_EQ(happy.insert_p, 0.5);
  EXPECT_EQ(happy.n_aug, 20);
  const AugmentConfig wonder = DefaultAugmentConfig(Emotion::kWonder);
  EXPECT_EQ(wonder.insert_p, 0.4);
  EXPECT_EQ(wonder.delete_p, 0.4);
  EXPECT_EQ(wonder.n_aug, 15);
  for (Emotion e : {Emotion::kHatred, Emotion::kSadness}) {
    EXPECT_EQ(DefaultAugmentConfig(e).insert_p, 0.3);
    EXPECT_EQ(DefaultAugmentConfig(e).n_aug, 10);
  }
  for (Emotion e : kAllEmotions) EXPECT_EQ(DefaultAugmentConfig(e).p_mode, ProbabilityMode::kPerSentence);
}

TEST(AugmentConfigTest, Validate) {
  AugmentConfig c = Zero(1);
  c.swap_p = 1.5;
  EXPECT_THROW(c.Validate(), ValidationError);
  c = Zero(-1);
  EXPECT_THROW(c.Validate(), ValidationError);
  c = Zero(0);
  c.delete_p = std::nan("");
  EXPECT_THROW(c.Validate(), ValidationError);
  EXPECT_EQ(ParseProbabilityMode("per_word"), ProbabilityMode::kPerWord);
  EXPECT_THROW(ParseProbabilityMode("sometimes"), ValidationError);
}

TEST(AugmentSampleTest, IdentityUnderZeroProbabilities) {
  const auto out = AugmentSample("الف ب ت", Zero(3), TinyLexicon(), 1);
  ASSERT_EQ(out.size(), 3u);
  for (const auto& s : out) EXPECT_EQ(s, "الف ب ت");
}

TEST(AugmentSampleTest, ZeroMutants) {
  EXPECT_TRUE(AugmentSample("الف", Zero(0), TinyLexicon(), 1).empty());
  EXPECT_THROW(AugmentSample("   ", Zero(1), TinyLexicon(), 1), ValidationError);
}

TEST(AugmentSampleTest, NeverEmpty) {
  AugmentConfig all{.swap_p = 1, .replace_p = 1, .insert_p = 0, .delete_p = 1, .n_aug = 200,
                    .p_mode = ProbabilityMode::kPerWord};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const auto& s : AugmentSample("الف", all, TinyLexicon(), seed)) {
      EXPECT_EQ(utf8::Tokens(s).size(), 1u);
    }
    for (const auto& s : AugmentSample("الف ب ت", all, TinyLexicon(), seed)) {
      EXPECT_EQ(utf8::Tokens(s).size(), 1u);
    }
  }
}

TEST(AugmentSampleTest, TokenCountBounds) {
  const AugmentConfig cfg = DefaultAugmentConfig(Emotion::kFear);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (const auto& s : AugmentSample(Tokens(7), cfg, TinyLexicon(), seed)) {
      const auto n = utf8::Tokens(s).size();
      EXPECT_GE(n, 1u);
      EXPECT_LE(n, 8u);
    }
  }
}

TEST(AugmentSampleTest, PerWordSwapIsLeftToRight) {
  AugmentConfig c = Zero(1);
  c.swap_p = 1;
  c.p_mode = ProbabilityMode::kPerWord;
  EXPECT_EQ(AugmentSample("a b c", c, TinyLexicon(), 5)[0], "b c a");
}

TEST(AugmentSampleTest, ReplaceUsesSynonyms) {
  AugmentConfig c = Zero(50);
  c.replace_p = 1;
  c.p_mode = ProbabilityMode::kPerWord;
  for (const auto& s : AugmentSample("الف ت ج", c, TinyLexicon(), 2)) {
    const auto t = utf8::Tokens(s);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_TRUE(t[0] == "ب" || t[0] == "پ") << t[0];
    EXPECT_EQ(t[1], "ث");
    // No synonyms: unchanged.
    EXPECT_EQ(t[2], "ج");
  }
}

TEST(AugmentSampleTest, InsertAddsOneWord) {
  AugmentConfig c = Zero(100);
  c.insert_p = 1;
  for (const auto& s : AugmentSample("الف ت", c, TinyLexicon(), 4)) {
    EXPECT_EQ(utf8::Tokens(s).size(), 3u);
  }
}

TEST(AugmentSampleTest, DeletionCountMatchesBinomial) {
  // 20 tokens, per-sentence delete_p = 1: each site fires with p = 1/20, so
  // deletions ~ Binomial(20, 1/20) with mean 1 and variance 0.95.
  AugmentConfig c = Zero(10000);
  c.delete_p = 1.0;
  const auto out = AugmentSample(Tokens(20), c, TinyLexicon(), 77);
  double total = 0;
  for (const auto& s : out) total += 20.0 - static_cast<double>(utf8::Tokens(s).size());
  const double mean = total / static_cast<double>(out.size());
  EXPECT_NEAR(mean, 1.0, 3.0 * std::sqrt(0.95 / 10000.0));
}

TEST(AugmentSampleTest, Deterministic) {
  const AugmentConfig cfg = DefaultAugmentConfig(Emotion::kWonder);
  EXPECT_EQ(AugmentSample(Tokens(10), cfg, TinyLexicon(), 9),
            AugmentSample(Tokens(10), cfg, TinyLexicon(), 9));
  EXPECT_NE(AugmentSample(Tokens(10), cfg, TinyLexicon(), 9),
            AugmentSample(Tokens(10), cfg, TinyLexicon(), 10));
}

// `pos` positives spread evenly among `neg` negatives.
LabeledDataset Imbalanced(std::size_t pos, std::size_t neg) {
  const std::size_t step = (pos + neg) / pos;
  std::vector<LabeledSample> s;
  for (std::size_t i = 0; i < pos + neg; ++i) {
    const bool positive = i % step == 0 && i / step < pos;
    s.push_back({.id = "s" + std::to_string(i), .text = Tokens(3 + i % 5),
                 .labels = {std::uint8_t(positive ? 1 : 0)}});
  }
  return LabeledDataset::Binary(Emotion::kAnger, s);
}

TEST(ExpandMinorityTest, Counts) {
  const LabeledDataset ds = Imbalanced(100, 1000);
  ASSERT_EQ(ds.CountLabel(0, 1), 100u);
  const LabeledDataset out = ExpandMinority(ds, DefaultAugmentConfig(Emotion::kAnger),
                                            TinyLexicon(), 3);
  EXPECT_EQ(out.CountLabel(0, 1), 1100u);
  EXPECT_EQ(out.CountLabel(0, 0), 1000u);
  EXPECT_EQ(out.target(), Emotion::kAnger);
}

TEST(ExpandMinorityTest, RatioOnOneToHundred) {
  const LabeledDataset ds = Imbalanced(20, 2000);
  const LabeledDataset out = ExpandMinority(ds, DefaultAugmentConfig(Emotion::kAnger),
                                            TinyLexicon(), 3);
  EXPECT_EQ(out.CountLabel(0, 1) * 100, out.CountLabel(0, 0) * 11);
}

TEST(ExpandMinorityTest, StructureAndLabels) {
  const LabeledDataset ds = Imbalanced(10, 50);
  AugmentConfig cfg = DefaultAugmentConfig(Emotion::kAnger);
  cfg.n_aug = 3;
  const LabeledDataset out = ExpandMinority(ds, cfg, TinyLexicon(), 11);
  std::size_t orig = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& s = out.samples()[i];
    if (s.origin == Origin::kOriginal) {
      EXPECT_EQ(s, ds.samples()[orig++]);
      if (s.label() == 1) {
        for (int k = 0; k < 3; ++k) {
          const auto& child = out.samples()[i + 1 + k];
          EXPECT_EQ(child.origin, Origin::kAugmented);
          EXPECT_EQ(child.parent_id, s.id);
          EXPECT_EQ(child.id, s.id + "~aug" + std::to_string(k));
          EXPECT_EQ(child.labels, s.labels);
        }
      }
    }
  }
  EXPECT_EQ(orig, ds.size());
  EXPECT_EQ(ExpandMinority(ds, cfg, TinyLexicon(), 11), out);
}

TEST(ExpandMinorityTest, ZeroMutantsUnchanged) {
  const LabeledDataset ds = Imbalanced(10, 50);
  EXPECT_EQ(ExpandMinority(ds, Zero(0), TinyLexicon(), 1), ds);
}

TEST(ExpandMinorityTest, RejectsMultiLabel) {
  const auto ds = LabeledDataset::MultiLabel({{.id = "a", .text = "x", .labels = {1, 0, 0, 0, 0, 0}}});
  EXPECT_THROW(ExpandMinority(ds, Zero(1), TinyLexicon(), 1), ValidationError);
}

TEST(LexiconProviderTest, LoadAndInsertables) {
  TempDir dir;
  WriteFile(dir / "syn.tsv", "خوب\tعالی\tنیکو\nبد\tزشت\n");
  const LexiconProvider p = LexiconProvider::Load(dir / "syn.tsv");
  EXPECT_EQ(p.Synonyms("خوب"), (std::vector<std::string>{"عالی", "نیکو"}));
  EXPECT_TRUE(p.Synonyms("هیچ").empty());
  EXPECT_EQ(p.Insertables("خوب", "بد"), (std::vector<std::string>{"عالی", "نیکو", "زشت"}));
  // Unknown neighbours fall back to the whole vocabulary.
  EXPECT_EQ(p.Insertables("", "هیچ").size(), 5u);
  WriteFile(dir / "bad.tsv", "خوب\t\n");
  EXPECT_THROW(LexiconProvider::Load(dir / "bad.tsv"), ValidationError);
}

}  // namespace
}  // namespace emopipe
