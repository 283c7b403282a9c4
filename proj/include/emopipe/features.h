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

#ifndef EMOPIPE_FEATURES_H_
#define EMOPIPE_FEATURES_H_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace emopipe {

enum class PosTag { kNoun, kVerb, kAdj, kAdv, kPron, kPunc, kNum, kOther };

std::string_view PosTagName(PosTag tag);
PosTag ParsePosTag(std::string_view name);

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  // Output has one tag per input token and depends only on the input.
  virtual std::vector<PosTag> Tag(std::span<const std::string> tokens) const = 0;
};

// Closed-class lexicon lookup, then longest matching suffix rule, then
// digit/punctuation checks, then OTHER.
class RuleTagger : public PosTagger {
 public:
  RuleTagger() = default;
  RuleTagger(std::unordered_map<std::string, PosTag> lexicon,
             std::vector<std::pair<std::string, PosTag>> suffixes);

  // Both files are `word-or-suffix<TAB>TAG` TSV.
  static RuleTagger Load(const std::filesystem::path& lexicon,
                         const std::filesystem::path& suffixes);

  std::vector<PosTag> Tag(std::span<const std::string> tokens) const override;
  PosTag TagOne(const std::string& token) const;

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
  // Sorted by descending suffix length.
  std::vector<std::pair<std::string, PosTag>> suffixes_;
};

struct FeatureBundle {
  std::vector<std::string> emojis;
  std::vector<std::string> hashtags;
  std::vector<std::string> misspelled;
  std::vector<PosTag> pos_tags;

  friend bool operator==(const FeatureBundle&, const FeatureBundle&) = default;
};

// True for codepoints in the emoji blocks recognised by extraction.
bool IsEmojiCodepoint(char32_t cp);

// Emoji sequences in order of appearance; trailing variation selectors stay
// attached to the preceding emoji.
std::vector<std::string> ExtractEmojis(std::string_view raw);

// Emojis, hashtags and misspellings come from `raw`; POS tags come from the
// tokens of `normalized`.
FeatureBundle Extract(std::string_view raw, std::string_view normalized,
                      const std::unordered_set<std::string>& vocabulary,
                      const PosTagger& tagger);

inline constexpr std::string_view kSeparator = "</s></s>";
inline constexpr std::size_t kComposedSegments = 5;

// `normalized </s></s> emojis </s></s> hashtags </s></s> misspelled
// </s></s> pos`, groups space-joined, separators always present.
std::string Compose(std::string_view normalized, const FeatureBundle& bundle);

// Inverse of Compose's framing: exactly kComposedSegments segments, or
// ValidationError if the string is not a composed string.
std::array<std::string, kComposedSegments> SplitComposed(std::string_view s);

}  // namespace emopipe

#endif  // EMOPIPE_FEATURES_H_
