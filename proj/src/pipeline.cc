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

#include "emopipe/pipeline.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "emopipe/random.h"
#include "emopipe/utf8.h"
#include "ini.h"
#include "json.hpp"

namespace emopipe {

namespace {

// Stream ids for DeriveSeed; one per seeded stage.
enum SeedStream : std::uint64_t {
  kSplitStream = 1,
  kAugmentStream = 2,
  kBalanceStream = 3,
  kTrainStream = 4,
  kHashStream = 5,
};

std::string Trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trimmed(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double ParseDouble(const std::string& s, const std::string& key) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ValidationError("config key '" + key + "': expected a number, got '" + s + "'");
  }
  return v;
}

std::uint64_t ParseUnsigned(const std::string& s, const std::string& key) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("config key '" + key +
                          "': expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

int ParseInt(const std::string& s, const std::string& key) {
  const std::uint64_t v = ParseUnsigned(s, key);
  if (v > static_cast<std::uint64_t>(INT32_MAX)) {
    throw ValidationError("config key '" + key + "': value too large");
  }
  return static_cast<int>(v);
}

bool ParseBool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw ValidationError("config key '" + key + "': expected a boolean, got '" + s + "'");
}

void RequireFile(const std::filesystem::path& p, const char* what) {
  if (p.empty()) throw ValidationError(std::string("config: ") + what + " path not set");
  if (!std::filesystem::is_regular_file(p)) {
    throw ValidationError(std::string("config: ") + what + " file '" + p.string() +
                          "' does not exist");
  }
}

std::string ModeName(ExperimentMode m) {
  return m == ExperimentMode::kMultiLabel ? "multilabel" : "binary_per_emotion";
}

std::string WeightSourceName(WeightSource w) {
  switch (w) {
    case WeightSource::kNone:
      return "none";
    case WeightSource::kDerive:
      return "derive";
    case WeightSource::kExplicit:
      return "explicit";
  }
  return "none";
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (!seed) throw ValidationError("config: seed is mandatory");
  RequireFile(input, "input");
  RequireFile(dictionary, "dictionary");
  RequireFile(translit, "translit");
  RequireFile(vocabulary, "vocabulary");
  RequireFile(pos_lexicon, "pos_lexicon");
  RequireFile(pos_suffixes, "pos_suffixes");
  if (!synonyms.empty()) RequireFile(synonyms, "synonyms");
  if (augment && synonyms.empty()) {
    throw ValidationError("config: augmentation needs a synonyms file");
  }
  if (output_dir.empty()) throw ValidationError("config: output path not set");
  if (emotions.empty()) throw ValidationError("config: no emotions selected");
  if (!(eval_fraction > 0.0 && eval_fraction < 1.0)) {
    throw ValidationError("config: eval_fraction must lie in (0, 1)");
  }
  if (threshold < 1 || threshold > kMaxVotes) {
    throw ValidationError("config: threshold must lie in [1, 5]");
  }
  for (const auto& a : augment_configs) a.Validate();
  if (undersample && !undersample_target && !(undersample_ratio > 0.0)) {
    throw ValidationError("config: undersampling needs ratio > 0 or a target");
  }
  if (weight_source == WeightSource::kExplicit &&
      (!(explicit_weights.w0 > 0.0) || !(explicit_weights.w1 > 0.0))) {
    throw ValidationError("config: class weights must be > 0");
  }
  train.Validate();
  HashedFeaturizer check(feature_dim, 0, train.max_tokens);
  (void)check;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  const ini::Document doc = ini::Document::Load(path);
  const std::filesystem::path base = path.parent_path();
  auto resolve = [&](const std::string& v) -> std::filesystem::path {
    std::filesystem::path p(v);
    return p.is_relative() ? base / p : p;
  };

  std::set<std::string> emotion_names;
  for (Emotion e : kAllEmotions) emotion_names.emplace(EmotionName(e));

  if (!doc.Section("").empty()) {
    throw ValidationError(path.string() + ": keys outside a section");
  }
  doc.CheckKeys("paths", {"input", "format", "dictionary", "translit", "vocabulary",
                          "synonyms", "pos_lexicon", "pos_suffixes", "output"});
  doc.CheckKeys("experiment", {"mode", "seed", "eval_fraction", "emotions"});
  doc.CheckKeys("selection", {"policy", "t"});
  doc.CheckKeys("augment",
                {"enabled", "p_mode", "swap_p", "replace_p", "insert_p", "delete_p", "n_aug"},
                emotion_names);
  doc.CheckKeys("balance", {"undersample", "ratio", "target", "class_weights"});
  doc.CheckKeys("train", {"loss", "lr", "epochs", "batch_size", "max_tokens", "dim",
                          "stats"});

  ExperimentConfig cfg;
  auto get = [&](const char* section, const char* key) { return doc.Get(section, key); };

  if (auto v = get("paths", "input")) cfg.input = resolve(*v);
  if (auto v = get("paths", "format")) cfg.input_format = ParseFileFormat(*v);
  if (auto v = get("paths", "dictionary")) cfg.dictionary = resolve(*v);
  if (auto v = get("paths", "translit")) cfg.translit = resolve(*v);
  if (auto v = get("paths", "vocabulary")) cfg.vocabulary = resolve(*v);
  if (auto v = get("paths", "synonyms")) cfg.synonyms = resolve(*v);
  if (auto v = get("paths", "pos_lexicon")) cfg.pos_lexicon = resolve(*v);
  if (auto v = get("paths", "pos_suffixes")) cfg.pos_suffixes = resolve(*v);
  if (auto v = get("paths", "output")) cfg.output_dir = resolve(*v);

  if (auto v = get("experiment", "mode")) {
    if (*v == "binary_per_emotion") {
      cfg.mode = ExperimentMode::kBinaryPerEmotion;
    } else if (*v == "multilabel") {
      cfg.mode = ExperimentMode::kMultiLabel;
    } else {
      throw ValidationError("config: unknown mode '" + *v + "'");
    }
  }
  if (auto v = get("experiment", "seed")) cfg.seed = ParseUnsigned(*v, "seed");
  if (auto v = get("experiment", "eval_fraction")) {
    cfg.eval_fraction = ParseDouble(*v, "eval_fraction");
  }
  if (auto v = get("experiment", "emotions")) {
    cfg.emotions.clear();
    for (const auto& name : SplitList(*v)) cfg.emotions.push_back(EmotionFromName(name));
  }

  if (auto v = get("selection", "policy")) {
    if (*v == "confidence") {
      cfg.use_confidence = true;
    } else if (*v == "threshold") {
      cfg.use_confidence = false;
    } else {
      throw ValidationError("config: unknown selection policy '" + *v + "'");
    }
  }
  if (auto v = get("selection", "t")) cfg.threshold = ParseInt(*v, "t");

  if (auto v = get("augment", "enabled")) cfg.augment = ParseBool(*v, "augment.enabled");
  ProbabilityMode p_mode = ProbabilityMode::kPerSentence;
  if (auto v = get("augment", "p_mode")) p_mode = ParseProbabilityMode(*v);
  for (Emotion e : kAllEmotions) {
    AugmentConfig a = DefaultAugmentConfig(e);
    a.p_mode = p_mode;
    const std::string prefix = std::string(EmotionName(e)) + ".";
    auto lookup = [&](const std::string& key) {
      if (auto v = doc.Get("augment", prefix + key)) return v;
      return doc.Get("augment", key);
    };
    if (auto v = lookup("swap_p")) a.swap_p = ParseDouble(*v, "swap_p");
    if (auto v = lookup("replace_p")) a.replace_p = ParseDouble(*v, "replace_p");
    if (auto v = lookup("insert_p")) a.insert_p = ParseDouble(*v, "insert_p");
    if (auto v = lookup("delete_p")) a.delete_p = ParseDouble(*v, "delete_p");
    if (auto v = lookup("n_aug")) a.n_aug = ParseInt(*v, "n_aug");
    cfg.augment_configs[Index(e)] = a;
  }

  if (auto v = get("balance", "undersample")) {
    cfg.undersample = ParseBool(*v, "balance.undersample");
  }
  if (auto v = get("balance", "ratio")) cfg.undersample_ratio = ParseDouble(*v, "ratio");
  if (auto v = get("balance", "target")) cfg.undersample_target = ParseUnsigned(*v, "target");
  if (auto v = get("balance", "class_weights")) {
    if (*v == "none") {
      cfg.weight_source = WeightSource::kNone;
    } else if (*v == "derive") {
      cfg.weight_source = WeightSource::kDerive;
    } else {
      const auto parts = SplitList(*v);
      if (parts.size() != 2) {
        throw ValidationError("config: class_weights must be none, derive or 'w0,w1'");
      }
      cfg.weight_source = WeightSource::kExplicit;
      cfg.explicit_weights = {ParseDouble(parts[0], "class_weights"),
                              ParseDouble(parts[1], "class_weights")};
    }
  }

  if (auto v = get("train", "loss")) cfg.train.loss = ParseLossKind(*v);
  if (auto v = get("train", "lr")) cfg.train.lr = ParseDouble(*v, "lr");
  if (auto v = get("train", "epochs")) cfg.train.epochs = ParseInt(*v, "epochs");
  if (auto v = get("train", "batch_size")) cfg.train.batch_size = ParseInt(*v, "batch_size");
  if (auto v = get("train", "max_tokens")) cfg.train.max_tokens = ParseUnsigned(*v, "max_tokens");
  if (auto v = get("train", "dim")) cfg.feature_dim = ParseUnsigned(*v, "dim");
  if (auto v = get("train", "stats")) cfg.train.stats = ParseStatsSchedule(*v);
  return cfg;
}

Resources Resources::Load(const ExperimentConfig& cfg) {
  Resources r;
  r.prep = PrepResources::Load(cfg.dictionary, cfg.translit);
  r.vocabulary = LoadVocabulary(cfg.vocabulary);
  if (r.vocabulary.empty()) throw ValidationError("vocabulary file is empty");
  r.tagger = RuleTagger::Load(cfg.pos_lexicon, cfg.pos_suffixes);
  if (!cfg.synonyms.empty()) r.synonyms = LexiconProvider::Load(cfg.synonyms);
  return r;
}

std::string PrepareText(std::string_view raw, const Resources& res) {
  const Normalized norm = Normalize(raw, res.prep);
  const FeatureBundle bundle = Extract(raw, norm.text, res.vocabulary, res.tagger);
  return Compose(norm.text, bundle);
}

LabeledDataset PrepareDataset(const LabeledDataset& ds, const Resources& res) {
  std::vector<LabeledSample> out = ds.samples();
  for (auto& s : out) s.text = PrepareText(s.text, res);
  return ds.mode() == LabelMode::kBinary
             ? LabeledDataset::Binary(ds.target(), std::move(out))
             : LabeledDataset::MultiLabel(std::move(out));
}

StageError::StageError(std::string stage, const std::exception& cause)
    : std::runtime_error("stage '" + stage + "' failed: " + cause.what()),
      stage_(std::move(stage)),
      validation_(dynamic_cast<const ValidationError*>(&cause) != nullptr) {}

namespace {

using nlohmann::ordered_json;

class StageRunner {
 public:
  explicit StageRunner(std::filesystem::path dir) : dir_(std::move(dir)) {}

  template <typename Fn>
  auto Run(const std::string& stage, Fn&& fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      std::ofstream marker(dir_ / ".failed", std::ios::trunc);
      marker << "stage: " << stage << "\ncause: " << e.what() << "\n";
      throw StageError(stage, e);
    }
  }

 private:
  std::filesystem::path dir_;
};

LabeledDataset ProjectBinary(const LabeledDataset& multi, Emotion e) {
  std::vector<LabeledSample> out;
  out.reserve(multi.size());
  for (const auto& s : multi.samples()) {
    LabeledSample b = s;
    b.labels = {s.labels[Index(e)]};
    out.push_back(std::move(b));
  }
  return LabeledDataset::Binary(e, std::move(out));
}

std::vector<std::string> Ids(const LabeledDataset& ds) {
  std::vector<std::string> ids;
  ids.reserve(ds.size());
  for (const auto& s : ds.samples()) ids.push_back(s.id);
  return ids;
}

ordered_json WeightsJson(const std::vector<ClassWeights>& ws) {
  ordered_json a = ordered_json::array();
  for (const auto& w : ws) a.push_back({w.w0, w.w1});
  return a;
}

ordered_json ConfigEcho(const ExperimentConfig& cfg) {
  ordered_json j;
  j["mode"] = ModeName(cfg.mode);
  j["seed"] = *cfg.seed;
  j["eval_fraction"] = cfg.eval_fraction;
  ordered_json emotions = ordered_json::array();
  for (Emotion e : cfg.emotions) emotions.push_back(EmotionName(e));
  j["emotions"] = emotions;
  j["selection"] = cfg.mode == ExperimentMode::kMultiLabel || !cfg.use_confidence
                       ? "threshold:" + std::to_string(cfg.threshold)
                       : std::string("confidence");
  j["augment"] = cfg.augment;
  if (cfg.augment) {
    ordered_json aug;
    for (Emotion e : cfg.emotions) {
      const auto& a = cfg.augment_configs[Index(e)];
      aug[std::string(EmotionName(e))] = {
          {"swap_p", a.swap_p},     {"replace_p", a.replace_p},
          {"insert_p", a.insert_p}, {"delete_p", a.delete_p},
          {"n_aug", a.n_aug},
          {"p_mode", a.p_mode == ProbabilityMode::kPerWord ? "per_word" : "per_sentence"}};
    }
    j["augment_configs"] = aug;
  }
  j["undersample"] = cfg.undersample;
  if (cfg.undersample) {
    if (cfg.undersample_target) {
      j["undersample_target"] = *cfg.undersample_target;
    } else {
      j["undersample_ratio"] = cfg.undersample_ratio;
    }
  }
  j["class_weights"] = WeightSourceName(cfg.weight_source);
  if (cfg.weight_source == WeightSource::kExplicit) {
    j["explicit_weights"] = {cfg.explicit_weights.w0, cfg.explicit_weights.w1};
  }
  j["loss"] = LossKindName(cfg.train.loss);
  j["lr"] = cfg.train.lr;
  j["epochs"] = cfg.train.epochs;
  j["batch_size"] = cfg.train.batch_size;
  j["max_tokens"] = cfg.train.max_tokens;
  j["dim"] = cfg.feature_dim;
  j["stats"] = StatsScheduleName(cfg.train.stats);
  return j;
}

void WriteJson(const ordered_json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  out.close();
  if (!out) throw RuntimeError("error writing '" + path.string() + "'");
}

std::vector<std::vector<std::uint8_t>> PredictAll(const Checkpoint& ckpt,
                                                  const LabeledDataset& eval) {
  std::vector<std::vector<std::uint8_t>> preds(ckpt.model.heads());
  for (const auto& s : eval.samples()) {
    const Prediction p = Predict(ckpt.model, s.text, ckpt.featurizer);
    for (std::size_t h = 0; h < p.decisions.size(); ++h) preds[h].push_back(p.decisions[h]);
  }
  return preds;
}

std::vector<std::uint8_t> Column(const LabeledDataset& ds, std::size_t head) {
  std::vector<std::uint8_t> col;
  col.reserve(ds.size());
  for (const auto& s : ds.samples()) col.push_back(s.labels[head]);
  return col;
}

}  // namespace

PipelineResult RunPipeline(const ExperimentConfig& cfg) {
  cfg.Validate();
  const std::uint64_t seed = *cfg.seed;
  std::filesystem::create_directories(cfg.output_dir);
  std::filesystem::remove(cfg.output_dir / ".failed");
  StageRunner stages(cfg.output_dir);
  WriteJson(ConfigEcho(cfg), cfg.output_dir / "config.json");

  const VotedDataset voted =
      stages.Run("ingest", [&] { return LoadVoted(cfg.input, cfg.input_format); });
  const Resources res = stages.Run("resources", [&] { return Resources::Load(cfg); });
  const HashedFeaturizer featurizer(cfg.feature_dim, DeriveSeed(seed, kHashStream),
                                    cfg.train.max_tokens);

  PipelineResult result;
  ordered_json runs = ordered_json::array();

  // One binary run per emotion, or a single six-head run.
  struct RunSpec {
    std::string name;
    std::optional<Emotion> emotion;
  };
  std::vector<RunSpec> specs;
  if (cfg.mode == ExperimentMode::kMultiLabel) {
    specs.push_back({"multilabel", std::nullopt});
  } else {
    for (Emotion e : cfg.emotions) specs.push_back({std::string(EmotionName(e)), e});
  }

  for (const auto& spec : specs) {
    const std::filesystem::path dir = cfg.output_dir / spec.name;
    std::filesystem::create_directories(dir);
    const bool binary = spec.emotion.has_value();

    LabeledDataset selected = stages.Run("select", [&] {
      LabeledDataset ds = (binary && cfg.use_confidence)
                              ? ApplyConfidence(voted, *spec.emotion)
                              : ApplyThreshold(voted, cfg.threshold);
      if (binary && !cfg.use_confidence) ds = ProjectBinary(ds, *spec.emotion);
      WriteLabeled(ds, dir / "selected.jsonl", FileFormat::kJsonl);
      return ds;
    });

    auto split = stages.Run("split", [&] {
      auto s = SplitDataset(selected, cfg.eval_fraction, DeriveSeed(seed, kSplitStream));
      WriteLabeled(s.train, dir / "train.jsonl", FileFormat::kJsonl);
      WriteLabeled(s.eval, dir / "eval.jsonl", FileFormat::kJsonl);
      return s;
    });
    LabeledDataset train = split.train;

    // Augmentation and undersampling only see the training split, and only
    // make sense for a single binary head.
    if (binary && cfg.augment) {
      train = stages.Run("augment", [&] {
        LabeledDataset out = ExpandMinority(train, cfg.augment_configs[Index(*spec.emotion)],
                                            res.synonyms, DeriveSeed(seed, kAugmentStream));
        WriteLabeled(out, dir / "augmented.jsonl", FileFormat::kJsonl);
        return out;
      });
    }
    if (binary && cfg.undersample) {
      train = stages.Run("balance", [&] {
        const std::size_t n1 = train.CountLabel(0, 1);
        const std::size_t n0 = train.CountLabel(0, 0);
        const std::uint8_t majority = n0 >= n1 ? 0 : 1;
        const std::size_t n_major = std::max(n0, n1);
        const std::size_t n_minor = std::min(n0, n1);
        std::size_t target = cfg.undersample_target
                                 ? *cfg.undersample_target
                                 : static_cast<std::size_t>(std::ceil(
                                       cfg.undersample_ratio * static_cast<double>(n_minor)));
        target = std::min(target, n_major);
        LabeledDataset out =
            UndersampleMajority(train, majority, target, DeriveSeed(seed, kBalanceStream));
        WriteLabeled(out, dir / "balanced.jsonl", FileFormat::kJsonl);
        return out;
      });
    }

    const std::vector<ClassWeights> weights = stages.Run("weights", [&] {
      std::vector<ClassWeights> ws;
      for (std::size_t h = 0; h < train.heads(); ++h) {
        switch (cfg.weight_source) {
          case WeightSource::kNone:
            ws.push_back({});
            break;
          case WeightSource::kExplicit:
            ws.push_back(cfg.explicit_weights);
            break;
          case WeightSource::kDerive:
            ws.push_back(DeriveClassWeights(train.CountLabel(h, 0), train.CountLabel(h, 1)));
            break;
        }
      }
      return ws;
    });

    const LabeledDataset train_ready = stages.Run("preprocess", [&] {
      LabeledDataset out = PrepareDataset(train, res);
      WriteLabeled(out, dir / "train_prepared.jsonl", FileFormat::kJsonl);
      return out;
    });
    const LabeledDataset eval_ready = stages.Run("preprocess", [&] {
      LabeledDataset out = PrepareDataset(split.eval, res);
      WriteLabeled(out, dir / "eval_prepared.jsonl", FileFormat::kJsonl);
      return out;
    });

    const Checkpoint ckpt = stages.Run("train", [&] {
      TrainConfig tc = cfg.train;
      tc.class_weights = weights;
      tc.seed = DeriveSeed(seed, kTrainStream);
      TrainResult tr = Train(train_ready, tc, featurizer);
      Checkpoint c{.model = std::move(tr.model),
                   .featurizer = featurizer,
                   .mode = binary ? LabelMode::kBinary : LabelMode::kMultiLabel,
                   .target = spec.emotion.value_or(Emotion::kAnger),
                   .config = tc};
      SaveCheckpoint(c, dir / "model.json");
      return c;
    });

    stages.Run("eval", [&] {
      const auto preds = PredictAll(ckpt, eval_ready);
      if (binary) {
        result.report.emotions.push_back(
            EvaluateEmotion(*spec.emotion, preds[0], Column(eval_ready, 0)));
      } else {
        LabelMatrix truth(eval_ready.size(), kNumEmotions);
        LabelMatrix pred(eval_ready.size(), kNumEmotions);
        for (Emotion e : kAllEmotions) {
          const auto col = Column(eval_ready, Index(e));
          for (std::size_t i = 0; i < col.size(); ++i) {
            truth.at(i, Index(e)) = col[i];
            pred.at(i, Index(e)) = preds[Index(e)][i];
          }
          result.report.emotions.push_back(EvaluateEmotion(e, preds[Index(e)], col));
        }
        result.report.hamming_loss = HammingLoss(truth, pred);
        result.report.hamming_score = HammingScore(truth, pred);
      }
    });

    result.eval_ids.push_back(Ids(split.eval));
    result.train_ids.push_back(Ids(train));
    ordered_json run;
    run["name"] = spec.name;
    run["selected"] = selected.size();
    run["train_size"] = train.size();
    run["train_positives"] = ordered_json::array();
    for (std::size_t h = 0; h < train.heads(); ++h) {
      run["train_positives"].push_back(train.CountLabel(h, 1));
    }
    run["class_weights"] = WeightsJson(weights);
    run["eval_ids"] = result.eval_ids.back();
    runs.push_back(run);
  }

  stages.Run("report", [&] {
    Finalize(result.report);
    ordered_json j = ToJson(result.report);
    j["config"] = ConfigEcho(cfg);
    j["runs"] = runs;
    result.report_path = cfg.output_dir / "report.json";
    WriteJson(j, result.report_path);
  });
  return result;
}

}  // namespace emopipe
