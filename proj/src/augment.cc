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

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_set>

#include "emopipe/error.h"
#include "emopipe/random.h"
#include "emopipe/utf8.h"

namespace emopipe {

ProbabilityMode ParseProbabilityMode(std::string_view name) {
  if (name == "per_sentence") return ProbabilityMode::kPerSentence;
  if (name == "per_word") return ProbabilityMode::kPerWord;
  throw ValidationError("unknown p-mode '" + std::string(name) +
                        "' (expected per_sentence or per_word)");
}

void AugmentConfig::Validate() const {
  const std::pair<const char*, double> probs[] = {
      {"swap_p", swap_p}, {"replace_p", replace_p},
      {"insert_p", insert_p}, {"delete_p", delete_p}};
  for (const auto& [name, p] : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError(std::string(name) + " = " + std::to_string(p) +
                            " outside [0,1]");
    }
  }
  if (n_aug < 0) throw ValidationError("n_aug must be >= 0");
}

AugmentConfig DefaultAugmentConfig(Emotion emotion) {
  switch (emotion) {
    case Emotion::kFear:
    case Emotion::kHappiness:
      return {.swap_p = 0.6, .replace_p = 0.6, .insert_p = 0.5, .delete_p = 0.4, .n_aug = 20};
    case Emotion::kWonder:
      return {.swap_p = 0.6, .replace_p = 0.6, .insert_p = 0.4, .delete_p = 0.4, .n_aug = 15};
    case Emotion::kAnger:
    case Emotion::kHatred:
    case Emotion::kSadness:
      break;
  }
  return {.swap_p = 0.6, .replace_p = 0.6, .insert_p = 0.3, .delete_p = 0.3, .n_aug = 10};
}

LexiconProvider::LexiconProvider(
    std::map<std::string, std::vector<std::string>> lex)
    : lexicon_(std::move(lex)) {
  std::set<std::string> vocab;
  for (const auto& [word, syns] : lexicon_) {
    vocab.insert(word);
    vocab.insert(syns.begin(), syns.end());
  }
  vocabulary_.assign(vocab.begin(), vocab.end());
}

LexiconProvider LexiconProvider::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot open '" + path.string() + "'");
  std::map<std::string, std::vector<std::string>> lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    for (const auto& f : fields) {
      if (f.empty() || utf8::Tokens(f).size() != 1 || utf8::Trim(f) != f) {
        throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                              ": entries must be single non-empty tokens");
      }
    }
    auto& syns = lex[fields[0]];
    for (std::size_t k = 1; k < fields.size(); ++k) {
      if (fields[k] != fields[0] &&
          std::find(syns.begin(), syns.end(), fields[k]) == syns.end()) {
        syns.push_back(fields[k]);
      }
    }
  }
  return LexiconProvider(std::move(lex));
}

std::vector<std::string> LexiconProvider::Synonyms(const std::string& word) const {
  auto it = lexicon_.find(word);
  return it == lexicon_.end() ? std::vector<std::string>{} : it->second;
}

std::vector<std::string> LexiconProvider::Insertables(
    const std::string& left, const std::string& right) const {
  std::vector<std::string> out = Synonyms(left);
  for (auto& s : Synonyms(right)) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  }
  return out.empty() ? vocabulary_ : out;
}

namespace {

double SiteProbability(double p, std::size_t tokens, ProbabilityMode mode) {
  if (mode == ProbabilityMode::kPerWord || tokens == 0) return p;
  return p / static_cast<double>(tokens);
}

std::string Mutate(std::vector<std::string> tokens, const AugmentConfig& cfg,
                   const WordProvider& provider, Rng& rng) {
  // Swap: each adjacent pair, left to right.
  {
    const double q = SiteProbability(cfg.swap_p, tokens.size(), cfg.p_mode);
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
      if (rng.Bernoulli(q)) std::swap(tokens[i], tokens[i + 1]);
    }
  }
  // Replace: the Bernoulli draw happens even without candidates so the
  // random stream does not depend on the lexicon.
  {
    const double q = SiteProbability(cfg.replace_p, tokens.size(), cfg.p_mode);
    for (auto& tok : tokens) {
      if (!rng.Bernoulli(q)) continue;
      const auto cands = provider.Synonyms(tok);
      if (!cands.empty()) tok = cands[rng.Below(cands.size())];
    }
  }
  // Insert: at most one word per mutant.
  if (rng.Bernoulli(cfg.insert_p)) {
    const std::size_t pos = rng.Below(tokens.size() + 1);
    const std::string left = pos > 0 ? tokens[pos - 1] : std::string();
    const std::string right = pos < tokens.size() ? tokens[pos] : std::string();
    const auto cands = provider.Insertables(left, right);
    if (!cands.empty()) {
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(pos),
                    cands[rng.Below(cands.size())]);
    }
  }
  // Delete: never the last remaining token.
  {
    const double q = SiteProbability(cfg.delete_p, tokens.size(), cfg.p_mode);
    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    std::size_t remaining = tokens.size();
    for (auto& tok : tokens) {
      if (rng.Bernoulli(q) && remaining > 1) {
        --remaining;
        continue;
      }
      kept.push_back(std::move(tok));
    }
    tokens = std::move(kept);
  }
  return utf8::Join(tokens, " ");
}

}  // namespace

std::vector<std::string> AugmentSample(std::string_view text,
                                       const AugmentConfig& cfg,
                                       const WordProvider& provider,
                                       std::uint64_t seed) {
  cfg.Validate();
  const auto tokens = utf8::Tokens(text);
  if (tokens.empty()) throw ValidationError("cannot augment a text with no tokens");
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(cfg.n_aug));
  for (int k = 0; k < cfg.n_aug; ++k) {
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(k)));
    out.push_back(Mutate(tokens, cfg, provider, rng));
  }
  return out;
}

LabeledDataset ExpandMinority(const LabeledDataset& ds, const AugmentConfig& cfg,
                              const WordProvider& provider, std::uint64_t seed) {
  if (ds.mode() != LabelMode::kBinary) {
    throw ValidationError("minority expansion needs a binary dataset");
  }
  cfg.Validate();
  std::unordered_set<std::string> ids;
  for (const auto& s : ds.samples()) ids.insert(s.id);

  std::vector<LabeledSample> out;
  out.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const LabeledSample& s = ds.samples()[i];
    out.push_back(s);
    if (s.label() != 1 || cfg.n_aug == 0) continue;
    const auto texts = AugmentSample(s.text, cfg, provider, DeriveSeed(seed, i));
    for (std::size_t k = 0; k < texts.size(); ++k) {
      LabeledSample child{.id = s.id + "~aug" + std::to_string(k),
                          .text = texts[k],
                          .labels = s.labels,
                          .origin = Origin::kAugmented,
                          .parent_id = s.id};
      if (!ids.insert(child.id).second) {
        throw ValidationError("augmented id '" + child.id + "' collides with an existing id");
      }
      out.push_back(std::move(child));
    }
  }
  return LabeledDataset::Binary(ds.target(), std::move(out));
}

}  // namespace emopipe
