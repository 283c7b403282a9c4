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

#ifndef EMOPIPE_TEXTPREP_H_
#define EMOPIPE_TEXTPREP_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace emopipe {

// Lookup tables for English words found in Persian tweets.
struct PrepResources {
  // Lowercase English token -> Persian token.
  std::unordered_map<std::string, std::string> en_fa_dictionary;
  // Lowercase Latin letter -> Persian letter sequence.
  std::unordered_map<char, std::string> translit_table;

  // Both files are `source<TAB>target` TSV. Throws ValidationError on
  // multi-token dictionary keys or multi-letter transliteration keys.
  static PrepResources Load(const std::filesystem::path& dictionary,
                            const std::filesystem::path& translit);
};

struct PrepReport {
  std::size_t spaces_fixed = 0;
  std::size_t diacritics_removed = 0;
  std::size_t stretched_words = 0;
  std::size_t translated_words = 0;
  std::size_t transliterated_words = 0;
  std::size_t hashtags_unwrapped = 0;
  std::size_t chars_dropped = 0;

  PrepReport& operator+=(const PrepReport& o);
  friend bool operator==(const PrepReport&, const PrepReport&) = default;
};

struct Normalized {
  std::string text;
  PrepReport report;
  // Hashtag bodies as unwrapped, in order of appearance.
  std::vector<std::string> hashtags;
};

// Runs, in order: space correction, English-word handling, stretched-letter
// collapse, diacritic removal, hashtag unwrap, non-Persian character removal.
// The sequence is repeated until the text stops changing, so the result is a
// fixed point (normalize is idempotent). Counters accumulate over passes.
Normalized Normalize(std::string_view text, const PrepResources& res);

// Whitespace tokens of `text` that are absent from `vocabulary`, in order,
// duplicates kept. Meant for raw text. Throws ValidationError on an empty
// vocabulary.
std::vector<std::string> MarkMisspelled(
    std::string_view text, const std::unordered_set<std::string>& vocabulary);

// One word per line; blank lines skipped.
std::unordered_set<std::string> LoadVocabulary(
    const std::filesystem::path& path);

// Hashtag bodies in `text`: '#' followed by a run of characters that are
// neither whitespace nor '#'. Bodies have '_' replaced by a space.
std::vector<std::string> ScanHashtags(std::string_view text);

namespace textprep_internal {
bool IsArabicLetter(char32_t cp);
bool IsDiacritic(char32_t cp);
bool IsRetained(char32_t cp);
}  // namespace textprep_internal

}  // namespace emopipe

#endif  // EMOPIPE_TEXTPREP_H_
