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

#include "emopipe/features.h"

#include <algorithm>
#include <fstream>

#include "emopipe/error.h"
#include "emopipe/textprep.h"
#include "emopipe/utf8.h"

namespace emopipe {

namespace {

constexpr std::pair<PosTag, std::string_view> kTagNames[] = {
    {PosTag::kNoun, "NOUN"}, {PosTag::kVerb, "VERB"}, {PosTag::kAdj, "ADJ"},
    {PosTag::kAdv, "ADV"},   {PosTag::kPron, "PRON"}, {PosTag::kPunc, "PUNC"},
    {PosTag::kNum, "NUM"},   {PosTag::kOther, "OTHER"}};

bool IsDigit(char32_t c) {
  return (c >= '0' && c <= '9') || (c >= 0x06F0 && c <= 0x06F9) ||
         (c >= 0x0660 && c <= 0x0669);
}

bool IsPunct(char32_t c) {
  return (c < 0x80 && !std::isalnum(static_cast<int>(c))) || c == U'،' ||
         c == U'؟' || c == U'؛' || c == U'«' || c == U'»';
}

bool IsVariationSelector(char32_t c) { return c == 0xFE0E || c == 0xFE0F; }

std::vector<std::pair<std::string, std::string>> ReadTagTsv(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot open '" + path.string() + "'");
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                            ": expected word<TAB>TAG");
    }
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return rows;
}

// Removes every occurrence of the separator, including ones created by a
// removal.
std::string StripSeparator(std::string s) {
  for (auto pos = s.find(kSeparator); pos != std::string::npos;
       pos = s.find(kSeparator)) {
    s.erase(pos, kSeparator.size());
  }
  return s;
}

std::string JoinGroup(const std::vector<std::string>& items) {
  std::vector<std::string> clean;
  clean.reserve(items.size());
  for (const auto& item : items) clean.push_back(StripSeparator(item));
  return utf8::Join(clean, " ");
}

}  // namespace

std::string_view PosTagName(PosTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "OTHER";
}

PosTag ParsePosTag(std::string_view name) {
  for (const auto& [t, n] : kTagNames) {
    if (n == name) return t;
  }
  throw ValidationError("unknown POS tag '" + std::string(name) + "'");
}

RuleTagger::RuleTagger(std::unordered_map<std::string, PosTag> lexicon,
                       std::vector<std::pair<std::string, PosTag>> suffixes)
    : lexicon_(std::move(lexicon)), suffixes_(std::move(suffixes)) {
  std::stable_sort(suffixes_.begin(), suffixes_.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.size() > b.first.size();
                   });
}

RuleTagger RuleTagger::Load(const std::filesystem::path& lexicon,
                            const std::filesystem::path& suffixes) {
  std::unordered_map<std::string, PosTag> lex;
  for (auto& [word, tag] : ReadTagTsv(lexicon)) {
    lex.emplace(std::move(word), ParsePosTag(tag));
  }
  std::vector<std::pair<std::string, PosTag>> suf;
  for (auto& [suffix, tag] : ReadTagTsv(suffixes)) {
    suf.emplace_back(std::move(suffix), ParsePosTag(tag));
  }
  return RuleTagger(std::move(lex), std::move(suf));
}

PosTag RuleTagger::TagOne(const std::string& token) const {
  if (auto it = lexicon_.find(token); it != lexicon_.end()) return it->second;
  const std::u32string cps = utf8::Decode(token);
  if (!cps.empty() && std::all_of(cps.begin(), cps.end(), IsDigit)) {
    return PosTag::kNum;
  }
  if (!cps.empty() && std::all_of(cps.begin(), cps.end(), IsPunct)) {
    return PosTag::kPunc;
  }
  for (const auto& [suffix, tag] : suffixes_) {
    if (token.size() > suffix.size() && token.ends_with(suffix)) return tag;
  }
  return PosTag::kOther;
}

std::vector<PosTag> RuleTagger::Tag(std::span<const std::string> tokens) const {
  std::vector<PosTag> tags;
  tags.reserve(tokens.size());
  for (const auto& t : tokens) tags.push_back(TagOne(t));
  return tags;
}

bool IsEmojiCodepoint(char32_t cp) {
  return (cp >= 0x1F600 && cp <= 0x1F64F) || (cp >= 0x1F300 && cp <= 0x1F5FF) ||
         (cp >= 0x1F900 && cp <= 0x1F9FF) || (cp >= 0x1F680 && cp <= 0x1F6FF) ||
         (cp >= 0x2700 && cp <= 0x27BF);
}

std::vector<std::string> ExtractEmojis(std::string_view raw) {
  const std::u32string cps = utf8::Decode(raw);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (!IsEmojiCodepoint(cps[i])) continue;
    std::string seq;
    utf8::Append(seq, cps[i]);
    while (i + 1 < cps.size() && IsVariationSelector(cps[i + 1])) {
      utf8::Append(seq, cps[++i]);
    }
    out.push_back(std::move(seq));
  }
  return out;
}

FeatureBundle Extract(std::string_view raw, std::string_view normalized,
                      const std::unordered_set<std::string>& vocabulary,
                      const PosTagger& tagger) {
  FeatureBundle b;
  b.emojis = ExtractEmojis(raw);
  b.hashtags = ScanHashtags(raw);
  b.misspelled = MarkMisspelled(raw, vocabulary);
  const auto tokens = utf8::Tokens(normalized);
  b.pos_tags = tagger.Tag(tokens);
  if (b.pos_tags.size() != tokens.size()) {
    throw RuntimeError("POS tagger returned " + std::to_string(b.pos_tags.size()) +
                       " tags for " + std::to_string(tokens.size()) + " tokens");
  }
  return b;
}

std::string Compose(std::string_view normalized, const FeatureBundle& bundle) {
  std::vector<std::string> pos;
  pos.reserve(bundle.pos_tags.size());
  for (PosTag t : bundle.pos_tags) pos.emplace_back(PosTagName(t));

  const std::string sep = " " + std::string(kSeparator) + " ";
  std::string out = StripSeparator(std::string(normalized));
  const std::vector<std::string>* groups[] = {&bundle.emojis, &bundle.hashtags,
                                              &bundle.misspelled, &pos};
  for (const auto* group : groups) {
    out += sep;
    out += JoinGroup(*group);
  }
  return out;
}

std::array<std::string, kComposedSegments> SplitComposed(std::string_view s) {
  const std::string sep = " " + std::string(kSeparator) + " ";
  std::array<std::string, kComposedSegments> parts;
  std::size_t start = 0;
  for (std::size_t k = 0; k + 1 < kComposedSegments; ++k) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      throw ValidationError("not a composed string: expected " +
                            std::to_string(kComposedSegments - 1) + " separators");
    }
    parts[k] = std::string(s.substr(start, pos - start));
    start = pos + sep.size();
  }
  parts[kComposedSegments - 1] = std::string(s.substr(start));
  if (parts.back().find(kSeparator) != std::string::npos) {
    throw ValidationError("not a composed string: too many separators");
  }
  return parts;
}

}  // namespace emopipe
