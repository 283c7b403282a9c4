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

#include <algorithm>
#include <cctype>
#include <fstream>

#include "emopipe/error.h"
#include "emopipe/utf8.h"

namespace emopipe {

namespace textprep_internal {

bool IsArabicLetter(char32_t cp) {
  return (cp >= 0x0621 && cp <= 0x063A) || (cp >= 0x0641 && cp <= 0x064A) ||
         (cp >= 0x066E && cp <= 0x066F) || (cp >= 0x0671 && cp <= 0x06D3) ||
         cp == 0x06D5 || (cp >= 0x06EE && cp <= 0x06EF) ||
         (cp >= 0x06FA && cp <= 0x06FC) || cp == 0x06FF ||
         (cp >= 0xFB50 && cp <= 0xFDFF) || (cp >= 0xFE70 && cp <= 0xFEFC);
}

bool IsDiacritic(char32_t cp) {
  return (cp >= 0x064B && cp <= 0x0652) || cp == 0x0670 || cp == 0x0640;
}

bool IsRetained(char32_t cp) {
  if (IsDiacritic(cp)) return false;
  if (cp >= 0x0600 && cp <= 0x06FF) return true;
  if ((cp >= 0xFB50 && cp <= 0xFDFF) || (cp >= 0xFE70 && cp <= 0xFEFC)) return true;
  if (cp >= '0' && cp <= '9') return true;
  return cp == ' ' || cp == '.' || cp == '?' || cp == '!' || cp == 0x200C;
}

}  // namespace textprep_internal

using textprep_internal::IsArabicLetter;
using textprep_internal::IsDiacritic;
using textprep_internal::IsRetained;

namespace {

constexpr char32_t kZwnj = 0x200C;

bool IsAsciiLetter(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

bool IsSentencePunct(char32_t cp) {
  return cp == '.' || cp == '?' || cp == '!' || cp == U'،' || cp == U'؟' ||
         cp == U'؛' || cp == ';';
}

const std::vector<std::u32string>& AffixPrefixes() {
  static const std::vector<std::u32string> kPrefixes = {U"می", U"نمی"};
  return kPrefixes;
}

const std::vector<std::u32string>& AffixSuffixes() {
  static const std::vector<std::u32string> kSuffixes = {
      U"ها", U"های", U"هایی", U"هایم", U"هایت", U"هایش", U"تر", U"ترین"};
  return kSuffixes;
}

bool Contains(const std::vector<std::u32string>& set, std::u32string_view w) {
  return std::find(set.begin(), set.end(), w) != set.end();
}

// Whitespace runs -> single ' ', trimmed ends.
std::size_t CollapseWhitespace(std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t fixes = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!utf8::IsSpace(s[i])) {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && utf8::IsSpace(s[j])) ++j;
    const bool edge = i == 0 || j == s.size();
    if (edge || j - i > 1 || s[i] != ' ') ++fixes;
    if (!edge) out.push_back(' ');
    i = j;
  }
  s = std::move(out);
  return fixes;
}

// No space before sentence punctuation; one space after it when a letter
// follows directly.
std::size_t FixPunctuationSpacing(std::u32string& s) {
  std::u32string out;
  out.reserve(s.size() + 8);
  std::size_t fixes = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char32_t c = s[i];
    if (c == ' ' && i + 1 < s.size() && IsSentencePunct(s[i + 1])) {
      ++fixes;
      continue;
    }
    out.push_back(c);
    if (IsSentencePunct(c) && i + 1 < s.size() &&
        (IsArabicLetter(s[i + 1]) || IsAsciiLetter(s[i + 1]))) {
      out.push_back(' ');
      ++fixes;
    }
  }
  s = std::move(out);
  return fixes;
}

// Collapses ZWNJ runs, removes spaces touching a ZWNJ and ZWNJ at token
// edges, then joins detached prefixes/suffixes to their word with a ZWNJ.
std::size_t FixAffixSpacing(std::u32string& s) {
  std::size_t fixes = 0;
  {
    std::u32string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char32_t c = s[i];
      if (c == kZwnj) {
        const bool after_gap = out.empty() || out.back() == ' ' || out.back() == kZwnj;
        const bool before_gap = i + 1 == s.size() || s[i + 1] == ' ';
        if (after_gap || before_gap) {
          ++fixes;
          continue;
        }
      }
      out.push_back(c);
    }
    s = std::move(out);
  }

  std::vector<std::u32string> tokens;
  {
    std::u32string cur;
    for (char32_t c : s) {
      if (c == ' ') {
        tokens.push_back(std::move(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    tokens.push_back(std::move(cur));
  }
  if (tokens.size() < 2) return fixes;

  auto starts_with_letter = [](const std::u32string& t) {
    return !t.empty() && IsArabicLetter(t.front());
  };
  auto ends_with_letter = [](const std::u32string& t) {
    return !t.empty() && IsArabicLetter(t.back());
  };

  std::u32string out;
  out.reserve(s.size());
  out += tokens[0];
  for (std::size_t k = 1; k < tokens.size(); ++k) {
    const std::u32string& prev = tokens[k - 1];
    const std::u32string& cur = tokens[k];
    const bool join_prefix = Contains(AffixPrefixes(), prev) && starts_with_letter(cur);
    const bool join_suffix = Contains(AffixSuffixes(), cur) && ends_with_letter(prev);
    if (join_prefix || join_suffix) {
      out.push_back(kZwnj);
      ++fixes;
    } else {
      out.push_back(' ');
    }
    out += cur;
  }
  s = std::move(out);
  return fixes;
}

void HandleEnglish(std::u32string& s, const PrepResources& res,
                   PrepReport& report) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (!IsAsciiLetter(s[i])) {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t j = i;
    std::string word;
    while (j < s.size() && IsAsciiLetter(s[j])) {
      word.push_back(static_cast<char>(std::tolower(static_cast<int>(s[j]))));
      ++j;
    }
    if (auto it = res.en_fa_dictionary.find(word); it != res.en_fa_dictionary.end()) {
      out += utf8::Decode(it->second);
      ++report.translated_words;
    } else {
      bool mapped = false;
      std::u32string translit;
      for (std::size_t k = i; k < j; ++k) {
        const char lower = word[k - i];
        if (auto t = res.translit_table.find(lower); t != res.translit_table.end()) {
          translit += utf8::Decode(t->second);
          mapped = true;
        } else {
          // Left for the final character filter.
          translit.push_back(s[k]);
        }
      }
      if (mapped) ++report.transliterated_words;
      out += translit;
    }
    i = j;
  }
  s = std::move(out);
}

std::size_t CollapseStretches(std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t words = 0;
  bool word_counted = false;
  std::size_t i = 0;
  while (i < s.size()) {
    const char32_t c = s[i];
    if (c == ' ') word_counted = false;
    std::size_t j = i;
    while (j < s.size() && s[j] == c) ++j;
    if (IsArabicLetter(c) && j - i >= 3) {
      out.push_back(c);
      if (!word_counted) {
        ++words;
        word_counted = true;
      }
    } else {
      out.append(j - i, c);
    }
    i = j;
  }
  s = std::move(out);
  return words;
}

std::size_t RemoveDiacritics(std::u32string& s) {
  const auto before = s.size();
  std::erase_if(s, [](char32_t c) { return IsDiacritic(c); });
  return before - s.size();
}

std::size_t UnwrapHashtags(std::u32string& s, std::vector<std::string>& bodies) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t tags = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    const bool tag = s[i] == '#' && i + 1 < s.size() && s[i + 1] != '#' &&
                     !utf8::IsSpace(s[i + 1]);
    if (!tag) {
      out.push_back(s[i++]);
      continue;
    }
    ++tags;
    ++i;
    std::string body;
    while (i < s.size() && s[i] != '#' && !utf8::IsSpace(s[i])) {
      const char32_t c = s[i] == '_' ? U' ' : s[i];
      out.push_back(c);
      utf8::Append(body, c);
      ++i;
    }
    bodies.push_back(std::move(body));
  }
  s = std::move(out);
  return tags;
}

std::size_t DropForeign(std::u32string& s) {
  const auto before = s.size();
  std::erase_if(s, [](char32_t c) { return !IsRetained(c); });
  return before - s.size();
}

PrepReport NormalizeOnce(std::u32string& s, const PrepResources& res,
                         std::vector<std::string>& hashtags) {
  PrepReport r;
  r.spaces_fixed += CollapseWhitespace(s);
  r.spaces_fixed += FixPunctuationSpacing(s);
  r.spaces_fixed += FixAffixSpacing(s);
  HandleEnglish(s, res, r);
  r.stretched_words += CollapseStretches(s);
  r.diacritics_removed += RemoveDiacritics(s);
  r.hashtags_unwrapped += UnwrapHashtags(s, hashtags);
  r.chars_dropped += DropForeign(s);
  return r;
}

std::vector<std::pair<std::string, std::string>> ReadTsvPairs(
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
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                            ": expected source<TAB>target");
    }
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return rows;
}

void CheckTarget(const std::filesystem::path& path, const std::string& target) {
  for (char32_t c : utf8::Decode(target)) {
    if (IsAsciiLetter(c) || c == '#') {
      throw ValidationError(path.string() + ": target '" + target +
                            "' must not contain Latin letters or '#'");
    }
  }
}

}  // namespace

PrepReport& PrepReport::operator+=(const PrepReport& o) {
  spaces_fixed += o.spaces_fixed;
  diacritics_removed += o.diacritics_removed;
  stretched_words += o.stretched_words;
  translated_words += o.translated_words;
  transliterated_words += o.transliterated_words;
  hashtags_unwrapped += o.hashtags_unwrapped;
  chars_dropped += o.chars_dropped;
  return *this;
}

PrepResources PrepResources::Load(const std::filesystem::path& dictionary,
                                  const std::filesystem::path& translit) {
  PrepResources res;
  for (auto& [src, dst] : ReadTsvPairs(dictionary)) {
    if (src.empty() || utf8::Tokens(src).size() != 1 ||
        utf8::Trim(src).size() != src.size()) {
      throw ValidationError(dictionary.string() + ": key '" + src +
                            "' is not a single token");
    }
    CheckTarget(dictionary, dst);
    std::string key;
    for (char c : src) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    res.en_fa_dictionary.emplace(std::move(key), std::move(dst));
  }
  for (auto& [src, dst] : ReadTsvPairs(translit)) {
    if (src.size() != 1 || !IsAsciiLetter(static_cast<unsigned char>(src[0]))) {
      throw ValidationError(translit.string() + ": key '" + src +
                            "' is not a single Latin letter");
    }
    CheckTarget(translit, dst);
    res.translit_table.emplace(
        static_cast<char>(std::tolower(static_cast<unsigned char>(src[0]))),
        std::move(dst));
  }
  return res;
}

Normalized Normalize(std::string_view text, const PrepResources& res) {
  // Each pass only shortens the text or inserts separators that later passes
  // keep, so a handful of passes reaches the fixed point.
  constexpr int kMaxPasses = 16;
  std::u32string s = utf8::Decode(text);
  Normalized result;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    const std::u32string before = s;
    result.report += NormalizeOnce(s, res, result.hashtags);
    if (s == before) {
      result.text = utf8::Encode(s);
      return result;
    }
  }
  throw RuntimeError("normalization did not converge");
}

std::vector<std::string> MarkMisspelled(
    std::string_view text, const std::unordered_set<std::string>& vocabulary) {
  if (vocabulary.empty()) throw ValidationError("vocabulary is empty");
  std::vector<std::string> out;
  for (auto& tok : utf8::Tokens(text)) {
    if (!vocabulary.count(tok)) out.push_back(std::move(tok));
  }
  return out;
}

std::unordered_set<std::string> LoadVocabulary(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot open '" + path.string() + "'");
  std::unordered_set<std::string> vocab;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = utf8::Trim(line);
    if (!word.empty()) vocab.insert(std::move(word));
  }
  return vocab;
}

std::vector<std::string> ScanHashtags(std::string_view text) {
  const std::u32string s = utf8::Decode(text);
  std::vector<std::string> tags;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '#' || i + 1 >= s.size() || s[i + 1] == '#' ||
        utf8::IsSpace(s[i + 1])) {
      ++i;
      continue;
    }
    ++i;
    std::string body;
    while (i < s.size() && s[i] != '#' && !utf8::IsSpace(s[i])) {
      utf8::Append(body, s[i] == '_' ? U' ' : s[i]);
      ++i;
    }
    tags.push_back(std::move(body));
  }
  return tags;
}

}  // namespace emopipe
