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

#include <cstdio>
#include <fstream>

#include "emopipe/pipeline.h"
#include "emopipe/random.h"
#include "emopipe/utf8.h"
#include "ini.h"

namespace emopipe {

namespace {

// Two disjoint alphabets; words alternate between them so no letter repeats
// back to back. ت and ر share an alphabet, which keeps words clear of the
// affix forms the normalizer joins.
constexpr std::u32string_view kAlphabetA = U"ابپتثجچحخدذر";
constexpr std::u32string_view kAlphabetB = U"زژسشصضطظعغفق";
constexpr std::size_t kMinWordLetters = 4;

std::string SampleId(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "s%06zu", i);
  return buf;
}

}  // namespace

std::string SynthWord(std::size_t index) {
  const std::size_t base = kAlphabetA.size();
  std::u32string word;
  std::size_t rest = index;
  while (word.size() < kMinWordLetters || rest > 0) {
    const auto& alphabet = word.size() % 2 == 0 ? kAlphabetA : kAlphabetB;
    word.push_back(alphabet[rest % base]);
    rest /= base;
  }
  return utf8::Encode(word);
}

void SynthSpec::Validate() const {
  if (n_samples == 0) throw ValidationError("synth: n_samples must be > 0");
  if (!(imbalance_ratio >= 1.0)) throw ValidationError("synth: imbalance_ratio must be >= 1");
  if (signal_tokens == 0) throw ValidationError("synth: signal_tokens must be > 0");
  if (vocabulary_size == 0) throw ValidationError("synth: vocabulary_size must be > 0");
  if (!(noise >= 0.0 && noise < 1.0)) throw ValidationError("synth: noise outside [0,1)");
  if (!(annotator_accuracy >= 0.0 && annotator_accuracy <= 1.0)) {
    throw ValidationError("synth: annotator_accuracy outside [0,1]");
  }
  if (min_tokens == 0 || min_tokens > max_tokens) {
    throw ValidationError("synth: need 0 < min_tokens <= max_tokens");
  }
}

SynthCorpus Synthesize(const SynthSpec& spec) {
  spec.Validate();
  SynthCorpus out;
  std::size_t next_word = 0;
  for (Emotion e : kAllEmotions) {
    for (std::size_t j = 0; j < spec.signal_tokens; ++j) {
      out.signal_words[Index(e)].push_back(SynthWord(next_word++));
    }
  }
  for (std::size_t j = 0; j < spec.vocabulary_size; ++j) {
    out.filler_words.push_back(SynthWord(next_word++));
  }

  const double p_positive = 1.0 / (1.0 + spec.imbalance_ratio);
  std::vector<VotedSample> samples;
  samples.reserve(spec.n_samples);
  out.truth.reserve(spec.n_samples);
  for (std::size_t i = 0; i < spec.n_samples; ++i) {
    Rng rng(DeriveSeed(spec.seed, i));
    const std::size_t len =
        spec.min_tokens + rng.Below(spec.max_tokens - spec.min_tokens + 1);
    std::vector<std::string> tokens;
    tokens.reserve(len + 2 * kNumEmotions);
    for (std::size_t k = 0; k < len; ++k) {
      tokens.push_back(out.filler_words[rng.Below(out.filler_words.size())]);
    }

    std::array<std::uint8_t, kNumEmotions> truth{};
    VotedSample s{.id = SampleId(i), .text = {}, .votes = {}};
    for (Emotion e : kAllEmotions) {
      const std::size_t h = Index(e);
      truth[h] = rng.Bernoulli(p_positive) ? 1 : 0;
      if (truth[h] == 1 && !rng.Bernoulli(spec.noise)) {
        const std::size_t n_signal = 1 + rng.Below(2);
        const auto& words = out.signal_words[h];
        for (std::size_t k = 0; k < n_signal; ++k) {
          const std::size_t pos = rng.Below(tokens.size() + 1);
          tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(pos),
                        words[rng.Below(words.size())]);
        }
      }
      const double p_vote = truth[h] == 1 ? spec.annotator_accuracy
                                          : 1.0 - spec.annotator_accuracy;
      int votes = 0;
      for (int a = 0; a < kMaxVotes; ++a) votes += rng.Bernoulli(p_vote) ? 1 : 0;
      s.votes[h] = votes;
    }
    s.text = utf8::Join(tokens, " ");
    samples.push_back(std::move(s));
    out.truth.push_back(truth);
  }
  out.corpus = VotedDataset(std::move(samples));
  return out;
}

SynthSpec LoadSynthSpec(const std::filesystem::path& path) {
  const ini::Document doc = ini::Document::Load(path);
  doc.CheckKeys("synth", {"n_samples", "imbalance_ratio", "signal_tokens", "vocabulary_size",
                          "noise", "annotator_accuracy", "min_tokens", "max_tokens", "seed"});
  SynthSpec spec;
  auto number = [&](const char* key) -> std::optional<double> {
    auto v = doc.Get("synth", key);
    if (!v) return std::nullopt;
    try {
      std::size_t used = 0;
      const double d = std::stod(*v, &used);
      if (used != v->size()) throw std::invalid_argument(*v);
      return d;
    } catch (const std::exception&) {
      throw ValidationError("synth key '" + std::string(key) + "': expected a number, got '" +
                            *v + "'");
    }
  };
  auto count = [&](const char* key, std::size_t& field) {
    if (auto d = number(key)) {
      if (*d < 0 || *d != static_cast<double>(static_cast<std::size_t>(*d))) {
        throw ValidationError("synth key '" + std::string(key) +
                              "': expected a non-negative integer");
      }
      field = static_cast<std::size_t>(*d);
    }
  };
  count("n_samples", spec.n_samples);
  count("signal_tokens", spec.signal_tokens);
  count("vocabulary_size", spec.vocabulary_size);
  count("min_tokens", spec.min_tokens);
  count("max_tokens", spec.max_tokens);
  if (auto d = number("imbalance_ratio")) spec.imbalance_ratio = *d;
  if (auto d = number("noise")) spec.noise = *d;
  if (auto d = number("annotator_accuracy")) spec.annotator_accuracy = *d;
  if (auto v = doc.Get("synth", "seed")) {
    try {
      std::size_t used = 0;
      spec.seed = std::stoull(*v, &used);
      if (used != v->size()) throw std::invalid_argument(*v);
    } catch (const std::exception&) {
      throw ValidationError("synth key 'seed': expected a non-negative integer");
    }
  }
  spec.Validate();
  return spec;
}

void WriteSynthCorpus(const SynthCorpus& synth, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  WriteVoted(synth.corpus, dir / "corpus.jsonl", FileFormat::kJsonl);

  std::ofstream vocab(dir / "vocabulary.txt", std::ios::binary | std::ios::trunc);
  std::ofstream syn(dir / "synonyms.tsv", std::ios::binary | std::ios::trunc);
  if (!vocab || !syn) throw RuntimeError("cannot write into '" + dir.string() + "'");
  for (const auto& words : synth.signal_words) {
    for (const auto& w : words) {
      vocab << w << '\n';
      syn << w;
      for (const auto& other : words) {
        if (other != w) syn << '\t' << other;
      }
      syn << '\n';
    }
  }
  // Fillers are synonyms within consecutive groups of four.
  constexpr std::size_t kGroup = 4;
  const auto& fill = synth.filler_words;
  for (std::size_t i = 0; i < fill.size(); ++i) {
    vocab << fill[i] << '\n';
    const std::size_t g = i - i % kGroup;
    bool any = false;
    std::string line = fill[i];
    for (std::size_t j = g; j < std::min(g + kGroup, fill.size()); ++j) {
      if (j == i) continue;
      line += '\t';
      line += fill[j];
      any = true;
    }
    if (any) syn << line << '\n';
  }
  if (!vocab || !syn) throw RuntimeError("error writing into '" + dir.string() + "'");
}

}  // namespace emopipe
