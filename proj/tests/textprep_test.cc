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

#include "emopipe/textprep.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "emopipe/error.h"
#include "emopipe/random.h"
#include "emopipe/utf8.h"
#include "test_util.h"

namespace emopipe {
namespace {

using textprep_internal::IsArabicLetter;
using textprep_internal::IsDiacritic;
using testing::DataFile;
using testing::TempDir;
using testing::WriteFile;

PrepResources ShippedResources() {
  return PrepResources::Load(DataFile("en_fa_dict.tsv"), DataFile("translit.tsv"));
}

PrepResources TinyResources() {
  PrepResources r;
  r.en_fa_dictionary = {{"love", "عشق"}, {"sad", "غمگین"}};
  r.translit_table = {{'b', "ب"}, {'o', "و"}, {'x', "کس"}};
  return r;
}

TEST(NormalizeTest, EmptyInput) {
  const Normalized n = Normalize("", TinyResources());
  EXPECT_EQ(n.text, "");
  EXPECT_EQ(n.report, PrepReport{});
}

TEST(NormalizeTest, StretchCollapse) {
  const Normalized n = Normalize("خیییییلی خوب", TinyResources());
  EXPECT_EQ(n.text, "خیلی خوب");
  EXPECT_EQ(n.report.stretched_words, 1u);
}

TEST(NormalizeTest, TwoRepeatsKept) {
  const Normalized n = Normalize("الله", TinyResources());
  EXPECT_EQ(n.text, "الله");
  EXPECT_EQ(n.report.stretched_words, 0u);
}

TEST(NormalizeTest, HashtagUnwrap) {
  const Normalized n = Normalize("#خیلی_خوب", TinyResources());
  EXPECT_EQ(n.text, "خیلی خوب");
  EXPECT_EQ(n.report.hashtags_unwrapped, 1u);
  EXPECT_EQ(n.hashtags, std::vector<std::string>{"خیلی خوب"});
}

TEST(NormalizeTest, DiacriticsRemoved) {
  // Fatha, damma, shadda, superscript alef and tatweel.
  const Normalized n = Normalize("مُحَمَّد ـ ٰ", TinyResources());
  EXPECT_EQ(n.text, "محمد");
  EXPECT_EQ(n.report.diacritics_removed, 6u);
}

TEST(NormalizeTest, DictionaryBeforeTransliteration) {
  const Normalized n = Normalize("I LOVE box", TinyResources());
  // "LOVE" is in the dictionary; "box" is transliterated letter by letter;
  // the unmapped "I" is dropped.
  EXPECT_EQ(n.text, "عشق بوکس");
  EXPECT_EQ(n.report.translated_words, 1u);
  EXPECT_EQ(n.report.transliterated_words, 1u);
  EXPECT_GE(n.report.chars_dropped, 1u);
}

TEST(NormalizeTest, WhitespaceAndPunctuation) {
  const Normalized n = Normalize("  سلام   دنیا .چطوری ?  ", TinyResources());
  EXPECT_EQ(n.text, "سلام دنیا. چطوری?");
  EXPECT_GT(n.report.spaces_fixed, 0u);
}

TEST(NormalizeTest, AffixJoinedWithZwnj) {
  const Normalized n = Normalize("می روم کتاب ها", TinyResources());
  EXPECT_EQ(n.text, "می‌روم کتاب‌ها");
  EXPECT_EQ(n.report.spaces_fixed, 2u);
}

TEST(NormalizeTest, EmojiAndLatinPunctuationDropped) {
  const Normalized n = Normalize("خوب 😀 (عالی) ۱۲ 34!", TinyResources());
  EXPECT_EQ(n.text, "خوب عالی ۱۲ 34!");
  EXPECT_EQ(n.report.chars_dropped, 3u);
}

TEST(NormalizeTest, CleanTextUntouched) {
  const Normalized n = Normalize("امروز هوا خوب است.", TinyResources());
  EXPECT_EQ(n.text, "امروز هوا خوب است.");
  EXPECT_EQ(n.report, PrepReport{});
}

// Random strings drawn from an alphabet that exercises every step.
std::string RandomText(Rng& rng) {
  static const std::vector<std::string> atoms = {
      "ا", "ب", "پ", "ی", "ه", "م", "ن", "ر", "ووو", "ییییی", "ــ", "َ", "ّ", "ٰ",
      " ", "  ", "\t", "\n", "‌", "‌‌", "#", "_", ".", "?", "!", "،", ",", "(",
      "a", "B", "x", "love", "SAD", "q", "😀", "❤️", "1", "۲", "می", "ها", " می ", " ها ",
      "#خوب", "#_", "##", "‎", "\xff"};
  std::string s;
  const std::size_t n = rng.Below(40);
  for (std::size_t i = 0; i < n; ++i) s += atoms[rng.Below(atoms.size())];
  return s;
}

void ExpectCleanState(const std::string& text) {
  const std::u32string cps = utf8::Decode(text);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i];
    EXPECT_NE(c, U'#') << text;
    EXPECT_FALSE(IsDiacritic(c)) << text;
    EXPECT_FALSE((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) << text;
    if (i + 2 < cps.size() && IsArabicLetter(c)) {
      EXPECT_FALSE(cps[i + 1] == c && cps[i + 2] == c) << text;
    }
  }
  EXPECT_EQ(utf8::Trim(text), text);
  EXPECT_EQ(text.find("  "), std::string::npos) << text;
}

TEST(NormalizeTest, IdempotentOnRandomStrings) {
  const PrepResources res = ShippedResources();
  const PrepResources tiny = TinyResources();
  Rng rng(2024);
  for (int k = 0; k < 1000; ++k) {
    const std::string raw = RandomText(rng);
    for (const PrepResources* r : {&res, &tiny}) {
      const Normalized once = Normalize(raw, *r);
      const Normalized twice = Normalize(once.text, *r);
      ASSERT_EQ(twice.text, once.text) << "raw: " << raw;
      EXPECT_EQ(twice.report, PrepReport{}) << "raw: " << raw;
      ExpectCleanState(once.text);
    }
  }
}

TEST(NormalizeTest, HashtagAgreementWithScan) {
  // Hashtags built from plain Persian words, mixed with ordinary words.
  const std::vector<std::string> words = {"خوب", "بد", "امروز", "دنیا", "کرونا"};
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    std::string raw;
    const std::size_t n = 1 + rng.Below(8);
    for (std::size_t i = 0; i < n; ++i) {
      if (!raw.empty()) raw += ' ';
      if (rng.Bernoulli(0.4)) {
        raw += "#" + words[rng.Below(words.size())];
        if (rng.Bernoulli(0.5)) raw += "_" + words[rng.Below(words.size())];
      } else {
        raw += words[rng.Below(words.size())];
      }
    }
    const Normalized norm = Normalize(raw, TinyResources());
    auto scanned = ScanHashtags(raw);
    auto unwrapped = norm.hashtags;
    std::sort(scanned.begin(), scanned.end());
    std::sort(unwrapped.begin(), unwrapped.end());
    EXPECT_EQ(scanned, unwrapped) << raw;
    EXPECT_EQ(norm.report.hashtags_unwrapped, scanned.size());
  }
}

TEST(ScanHashtagsTest, Bodies) {
  EXPECT_EQ(ScanHashtags("سلام #خیلی_خوب و #عالی!"),
            (std::vector<std::string>{"خیلی خوب", "عالی!"}));
  EXPECT_TRUE(ScanHashtags("# تنها ##").empty());
  EXPECT_EQ(ScanHashtags("#a#b"), (std::vector<std::string>{"a", "b"}));
}

TEST(MarkMisspelledTest, Examples) {
  const std::unordered_set<std::string> vocab = {"خیلی", "خوب"};
  EXPECT_TRUE(MarkMisspelled("خیلی خوب", vocab).empty());
  EXPECT_EQ(MarkMisspelled("خیییییلی خوب", vocab), std::vector<std::string>{"خیییییلی"});
  EXPECT_EQ(MarkMisspelled("بد خوب بد", vocab), (std::vector<std::string>{"بد", "بد"}));
  EXPECT_THROW(MarkMisspelled("x", {}), ValidationError);
}

TEST(MarkMisspelledTest, MatchesSetDifference) {
  Rng rng(12);
  const std::vector<std::string> pool = {"الف", "ب", "پ", "ت", "ث", "ج", "چ", "ح"};
  for (int k = 0; k < 100; ++k) {
    std::unordered_set<std::string> vocab;
    for (const auto& w : pool) {
      if (rng.Bernoulli(0.5)) vocab.insert(w);
    }
    vocab.insert("sentinel");
    std::vector<std::string> toks;
    for (std::size_t i = 0; i < rng.Below(20); ++i) toks.push_back(pool[rng.Below(pool.size())]);
    std::vector<std::string> expected;
    for (const auto& t : toks) {
      if (!vocab.count(t)) expected.push_back(t);
    }
    EXPECT_EQ(MarkMisspelled(utf8::Join(toks, " "), vocab), expected);
  }
}

TEST(PrepResourcesTest, LoadValidates) {
  TempDir dir;
  WriteFile(dir / "d.tsv", "two words\tدو\n");
  WriteFile(dir / "t.tsv", "a\tا\n");
  EXPECT_THROW(PrepResources::Load(dir / "d.tsv", dir / "t.tsv"), ValidationError);
  WriteFile(dir / "d.tsv", "ok\tok\n");
  EXPECT_THROW(PrepResources::Load(dir / "d.tsv", dir / "t.tsv"), ValidationError);
  WriteFile(dir / "d.tsv", "ok\tباشه\n");
  WriteFile(dir / "t.tsv", "ab\tا\n");
  EXPECT_THROW(PrepResources::Load(dir / "d.tsv", dir / "t.tsv"), ValidationError);
  WriteFile(dir / "t.tsv", "A\tا\n");
  const PrepResources r = PrepResources::Load(dir / "d.tsv", dir / "t.tsv");
  EXPECT_EQ(r.translit_table.at('a'), "ا");
  EXPECT_EQ(r.en_fa_dictionary.at("ok"), "باشه");
}

TEST(PrepResourcesTest, ShippedTablesCoverAlphabet) {
  const PrepResources r = ShippedResources();
  for (char c = 'a'; c <= 'z'; ++c) EXPECT_TRUE(r.translit_table.count(c)) << c;
}

}  // namespace
}  // namespace emopipe
