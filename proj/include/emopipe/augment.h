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

#ifndef EMOPIPE_AUGMENT_H_
#define EMOPIPE_AUGMENT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "emopipe/corpus.h"
#include "emopipe/emotion.h"

namespace emopipe {

// How operator probabilities map onto individual token sites.
enum class ProbabilityMode {
  // Each site fires with p / tokens, so p is the expected operation count
  // per sentence.
  kPerSentence,
  // Each site fires with p.
  kPerWord,
};

ProbabilityMode ParseProbabilityMode(std::string_view name);

struct AugmentConfig {
  double swap_p = 0.0;
  double replace_p = 0.0;
  double insert_p = 0.0;
  double delete_p = 0.0;
  int n_aug = 0;
  ProbabilityMode p_mode = ProbabilityMode::kPerSentence;

  // Throws ValidationError if a probability is outside [0,1] or n_aug < 0.
  void Validate() const;
  friend bool operator==(const AugmentConfig&, const AugmentConfig&) = default;
};

// Per-emotion defaults tuned to each emotion's class ratio.
AugmentConfig DefaultAugmentConfig(Emotion emotion);

class WordProvider {
 public:
  virtual ~WordProvider() = default;
  virtual std::vector<std::string> Synonyms(const std::string& word) const = 0;
  virtual std::vector<std::string> Insertables(const std::string& left,
                                               const std::string& right) const = 0;
};

// Static synonym lexicon. Insertion candidates are the synonyms of the
// neighbouring words, falling back to the whole lexicon vocabulary.
class LexiconProvider : public WordProvider {
 public:
  LexiconProvider() = default;
  explicit LexiconProvider(std::map<std::string, std::vector<std::string>> lex);

  // `word<TAB>synonym1<TAB>synonym2...` per line.
  static LexiconProvider Load(const std::filesystem::path& path);

  std::vector<std::string> Synonyms(const std::string& word) const override;
  std::vector<std::string> Insertables(const std::string& left,
                                       const std::string& right) const override;

 private:
  std::map<std::string, std::vector<std::string>> lexicon_;
  std::vector<std::string> vocabulary_;
};

// n_aug independent mutants of `text`, operators applied swap, replace,
// insert, delete. Never returns an empty string for non-empty input.
// Throws ValidationError if `text` has no tokens.
std::vector<std::string> AugmentSample(std::string_view text,
                                       const AugmentConfig& cfg,
                                       const WordProvider& provider,
                                       std::uint64_t seed);

// Adds n_aug augmented children after every label-1 sample of a binary
// dataset. Children are named `<parent>~aug<k>`.
LabeledDataset ExpandMinority(const LabeledDataset& ds,
                              const AugmentConfig& cfg,
                              const WordProvider& provider,
                              std::uint64_t seed);

}  // namespace emopipe

#endif  // EMOPIPE_AUGMENT_H_
