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

#include "emopipe/utf8.h"

#include <gtest/gtest.h>

namespace emopipe {
namespace {

TEST(Utf8Test, RoundTrip) {
  const std::string s = "سلام 😀 abc‌ها";
  EXPECT_EQ(utf8::Encode(utf8::Decode(s)), s);
  const std::u32string cps = utf8::Decode("a😀");
  ASSERT_EQ(cps.size(), 2u);
  EXPECT_EQ(cps[1], U'\U0001F600');
}

TEST(Utf8Test, InvalidBytesBecomeReplacement) {
  const std::u32string cps = utf8::Decode(std::string("a\xff" "b"));
  ASSERT_EQ(cps.size(), 3u);
  EXPECT_EQ(cps[1], U'�');
  // Truncated multi-byte sequence.
  EXPECT_EQ(utf8::Decode(std::string("\xd8")), std::u32string(1, U'�'));
}

TEST(Utf8Test, Tokens) {
  const auto t = utf8::Tokens("  یک\tدو \n سه  ");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0], "یک");
  EXPECT_EQ(t[2], "سه");
  EXPECT_TRUE(utf8::Tokens("   ").empty());
  EXPECT_TRUE(utf8::Tokens("").empty());
}

TEST(Utf8Test, ZwnjIsNotSpace) {
  EXPECT_FALSE(utf8::IsSpace(U'‌'));
  EXPECT_EQ(utf8::Tokens("می‌روم").size(), 1u);
}

TEST(Utf8Test, TrimAndJoin) {
  EXPECT_EQ(utf8::Trim("  x y \n"), "x y");
  EXPECT_EQ(utf8::Join({"a", "b", "c"}, " "), "a b c");
  EXPECT_EQ(utf8::Join({}, " "), "");
}

}  // namespace
}  // namespace emopipe
