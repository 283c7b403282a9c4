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

#ifndef EMOPIPE_PIPELINE_H_
#define EMOPIPE_PIPELINE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "emopipe/augment.h"
#include "emopipe/balance.h"
#include "emopipe/corpus.h"
#include "emopipe/emotion.h"
#include "emopipe/error.h"
#include "emopipe/features.h"
#include "emopipe/metrics.h"
#include "emopipe/model.h"
#include "emopipe/selection.h"
#include "emopipe/textprep.h"

namespace emopipe {

enum class ExperimentMode { kBinaryPerEmotion, kMultiLabel };

enum class WeightSource {
  kNone,     // (1, 1)
  kDerive,   // DeriveClassWeights on the final training counts
  kExplicit  // `explicit_weights`
};

struct ExperimentConfig {
  // Paths. Relative entries in a config file resolve against its directory.
  std::filesystem::path input;
  FileFormat input_format = FileFormat::kJsonl;
  std::filesystem::path dictionary;
  std::filesystem::path translit;
  std::filesystem::path vocabulary;
  std::filesystem::path synonyms;
  std::filesystem::path pos_lexicon;
  std::filesystem::path pos_suffixes;
  std::filesystem::path output_dir;

  ExperimentMode mode = ExperimentMode::kBinaryPerEmotion;
  std::vector<Emotion> emotions{kAllEmotions.begin(), kAllEmotions.end()};
  std::optional<std::uint64_t> seed;
  double eval_fraction = 0.1;

  // Binary mode uses the confidence policy per emotion unless a threshold is
  // set; multi-label mode always uses the threshold.
  bool use_confidence = true;
  int threshold = 3;

  bool augment = false;
  std::array<AugmentConfig, kNumEmotions> augment_configs{};

  bool undersample = false;
  // Majority kept = min(|majority|, ratio * |minority|), or an explicit
  // per-run target.
  double undersample_ratio = 0.0;
  std::optional<std::size_t> undersample_target;

  WeightSource weight_source = WeightSource::kNone;
  ClassWeights explicit_weights;

  TrainConfig train;
  std::size_t feature_dim = HashedFeaturizer::kDefaultDim;

  // Throws ValidationError when a referenced file is missing, the seed is
  // absent, or a value is out of range.
  void Validate() const;
};

// Parses the INI-style experiment config. Throws ValidationError.
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

// Pre-processing resources shared by every stage.
struct Resources {
  PrepResources prep;
  std::unordered_set<std::string> vocabulary;
  RuleTagger tagger;
  LexiconProvider synonyms;

  static Resources Load(const ExperimentConfig& cfg);
};

// normalize -> extract -> compose on one raw text.
std::string PrepareText(std::string_view raw, const Resources& res);

// Applies PrepareText to every sample's text.
LabeledDataset PrepareDataset(const LabeledDataset& ds, const Resources& res);

// Error raised by a pipeline stage; `stage()` names it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::exception& cause);
  const std::string& stage() const { return stage_; }
  bool validation() const { return validation_; }

 private:
  std::string stage_;
  bool validation_;
};

struct PipelineResult {
  MetricsReport report;
  std::filesystem::path report_path;
  // Eval ids per run (one run per emotion, or one multi-label run).
  std::vector<std::vector<std::string>> eval_ids;
  std::vector<std::vector<std::string>> train_ids;
};

// select -> split -> augment(train) -> balance(train) -> preprocess and
// compose -> train -> eval. Writes stage outputs, checkpoints and
// report.json under cfg.output_dir. On failure a `.failed` marker naming the
// stage is written and StageError is thrown.
PipelineResult RunPipeline(const ExperimentConfig& cfg);

// Synthetic voted corpus generator.
struct SynthSpec {
  std::size_t n_samples = 2000;
  // Negatives per positive for each emotion.
  double imbalance_ratio = 19.0;
  std::size_t signal_tokens = 6;
  std::size_t vocabulary_size = 400;
  // Probability that a positive sample carries no signal token. Negatives
  // never carry one.
  double noise = 0.1;
  // Probability that an annotator votes with the true label.
  double annotator_accuracy = 0.85;
  std::size_t min_tokens = 6;
  std::size_t max_tokens = 16;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct SynthCorpus {
  VotedDataset corpus;
  // Ground-truth class per sample and emotion, row-major.
  std::vector<std::array<std::uint8_t, kNumEmotions>> truth;
  // Signal words per emotion.
  std::array<std::vector<std::string>, kNumEmotions> signal_words;
  std::vector<std::string> filler_words;
};

SynthCorpus Synthesize(const SynthSpec& spec);

// Reads the [synth] section of an INI file; missing keys keep defaults.
SynthSpec LoadSynthSpec(const std::filesystem::path& path);

// Writes corpus.jsonl plus vocabulary.txt and synonyms.tsv matching the
// generated words into `dir`.
void WriteSynthCorpus(const SynthCorpus& synth, const std::filesystem::path& dir);

// Persian-letter pseudo-word for `index`; distinct indices give distinct
// words and no letter repeats three times in a row.
std::string SynthWord(std::size_t index);

}  // namespace emopipe

#endif  // EMOPIPE_PIPELINE_H_
