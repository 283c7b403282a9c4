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

// Command-line front end: one subcommand per pipeline stage, plus the
// one-shot `pipeline` runner and the `synth` corpus generator.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "emopipe/augment.h"
#include "emopipe/balance.h"
#include "emopipe/corpus.h"
#include "emopipe/error.h"
#include "emopipe/features.h"
#include "emopipe/metrics.h"
#include "emopipe/model.h"
#include "emopipe/pipeline.h"
#include "emopipe/random.h"
#include "emopipe/selection.h"
#include "emopipe/textprep.h"
#include "json.hpp"

using nlohmann::ordered_json;

namespace emopipe {
namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string format;
};

FileFormat Format(const Globals& g) {
  return g.format.empty() ? FileFormat::kJsonl : ParseFileFormat(g.format);
}

std::uint64_t RequireSeed(const Globals& g) {
  if (!g.seed) throw ValidationError("--seed is required for this stage");
  return *g.seed;
}

void WriteJsonFile(const ordered_json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw RuntimeError("error writing '" + path + "'");
}

// Loads a labeled dataset; a binary file may be requested explicitly.
LabeledDataset LoadInput(const std::string& path, FileFormat format) {
  return LoadLabeled(path, format);
}

LabeledDataset RequireBinary(LabeledDataset ds, const std::string& what) {
  if (ds.mode() != LabelMode::kBinary) {
    throw ValidationError(what + " needs a binary (single-emotion) dataset");
  }
  return ds;
}

// --- ingest -------------------------------------------------------------

struct IngestOpts {
  std::string input;
  std::string output;
  std::string out_format;
};

void AddIngest(CLI::App& app, IngestOpts& o) {
  auto* c = app.add_subcommand("ingest", "Validate a voted corpus and re-emit it");
  c->add_option("--input", o.input, "Voted corpus")->required();
  c->add_option("--out", o.output, "Output file")->required();
  c->add_option("--out-format", o.out_format, "jsonl|csv (default: --format)");
}

int RunIngest(const Globals& g, const IngestOpts& o) {
  const VotedDataset ds = LoadVoted(o.input, Format(g));
  const FileFormat out = o.out_format.empty() ? Format(g) : ParseFileFormat(o.out_format);
  WriteVoted(ds, o.output, out);
  std::cerr << "ingested " << ds.size() << " samples\n";
  return 0;
}

// --- select -------------------------------------------------------------

struct SelectOpts {
  std::string input;
  std::string output;
  std::string policy;
  int t = 3;
  std::string emotion;
};

void AddSelect(CLI::App& app, SelectOpts& o) {
  auto* c = app.add_subcommand("select", "Turn vote counts into labels");
  c->add_option("--input", o.input, "Voted corpus")->required();
  c->add_option("--out", o.output, "Labeled output")->required();
  c->add_option("--policy", o.policy, "threshold|confidence")
      ->required()
      ->check(CLI::IsMember({"threshold", "confidence"}));
  c->add_option("--t", o.t, "Vote threshold in [1,5]");
  c->add_option("--emotion", o.emotion, "Target emotion (confidence policy)");
}

int RunSelect(const Globals& g, const SelectOpts& o) {
  const VotedDataset voted = LoadVoted(o.input, Format(g));
  LabeledDataset out = LabeledDataset::MultiLabel({});
  if (o.policy == "threshold") {
    out = ApplyThreshold(voted, o.t);
  } else {
    if (o.emotion.empty()) throw ValidationError("--policy confidence needs --emotion");
    out = ApplyConfidence(voted, EmotionFromName(o.emotion));
  }
  WriteLabeled(out, o.output, Format(g));
  std::cerr << "selected " << out.size() << " of " << voted.size() << " samples\n";
  return 0;
}

// --- preprocess ---------------------------------------------------------

struct PreprocessOpts {
  std::string input;
  std::string output;
  std::string dict;
  std::string translit;
  std::string report;
};

void AddPreprocess(CLI::App& app, PreprocessOpts& o) {
  auto* c = app.add_subcommand("preprocess", "Normalize the text of a labeled dataset");
  c->add_option("--input", o.input, "Labeled dataset")->required();
  c->add_option("--out", o.output, "Normalized output")->required();
  c->add_option("--dict", o.dict, "English-Persian dictionary TSV")->required();
  c->add_option("--translit", o.translit, "Transliteration TSV")->required();
  c->add_option("--report", o.report, "Write normalization counters as JSON");
}

int RunPreprocess(const Globals& g, const PreprocessOpts& o) {
  const LabeledDataset ds = LoadInput(o.input, Format(g));
  const PrepResources res = PrepResources::Load(o.dict, o.translit);
  PrepReport total;
  std::vector<LabeledSample> out = ds.samples();
  for (auto& s : out) {
    Normalized n = Normalize(s.text, res);
    total += n.report;
    s.text = std::move(n.text);
  }
  const LabeledDataset result = ds.mode() == LabelMode::kBinary
                                    ? LabeledDataset::Binary(ds.target(), std::move(out))
                                    : LabeledDataset::MultiLabel(std::move(out));
  WriteLabeled(result, o.output, Format(g));
  if (!o.report.empty()) {
    ordered_json j = {{"samples", result.size()},
                      {"spaces_fixed", total.spaces_fixed},
                      {"diacritics_removed", total.diacritics_removed},
                      {"stretched_words", total.stretched_words},
                      {"translated_words", total.translated_words},
                      {"transliterated_words", total.transliterated_words},
                      {"hashtags_unwrapped", total.hashtags_unwrapped},
                      {"chars_dropped", total.chars_dropped}};
    WriteJsonFile(j, o.report);
  }
  return 0;
}

// --- featurize ----------------------------------------------------------

struct FeaturizeOpts {
  std::string input;
  std::string output;
  std::string dict;
  std::string translit;
  std::string vocabulary;
  std::string pos_lexicon;
  std::string pos_suffixes;
};

void AddFeaturize(CLI::App& app, FeaturizeOpts& o) {
  auto* c = app.add_subcommand(
      "featurize", "Normalize, extract surface features and compose model input");
  c->add_option("--input", o.input, "Labeled dataset with raw text")->required();
  c->add_option("--out", o.output, "Composed output")->required();
  c->add_option("--dict", o.dict, "English-Persian dictionary TSV")->required();
  c->add_option("--translit", o.translit, "Transliteration TSV")->required();
  c->add_option("--vocabulary", o.vocabulary, "Spelling vocabulary")->required();
  c->add_option("--pos-lexicon", o.pos_lexicon, "POS lexicon TSV")->required();
  c->add_option("--pos-suffixes", o.pos_suffixes, "POS suffix rules TSV")->required();
}

int RunFeaturize(const Globals& g, const FeaturizeOpts& o) {
  const LabeledDataset ds = LoadInput(o.input, Format(g));
  Resources res;
  res.prep = PrepResources::Load(o.dict, o.translit);
  res.vocabulary = LoadVocabulary(o.vocabulary);
  if (res.vocabulary.empty()) throw ValidationError("vocabulary file is empty");
  res.tagger = RuleTagger::Load(o.pos_lexicon, o.pos_suffixes);
  WriteLabeled(PrepareDataset(ds, res), o.output, Format(g));
  return 0;
}

// --- augment ------------------------------------------------------------

struct AugmentOpts {
  std::string input;
  std::string output;
  std::string emotion;
  std::string synonyms;
  std::optional<int> n_aug;
  std::optional<double> swap_p;
  std::optional<double> replace_p;
  std::optional<double> insert_p;
  std::optional<double> delete_p;
  std::string p_mode = "per_sentence";
};

void AddAugment(CLI::App& app, AugmentOpts& o) {
  auto* c = app.add_subcommand("augment", "Expand the positive class of a binary dataset");
  c->add_option("--input", o.input, "Binary labeled dataset")->required();
  c->add_option("--out", o.output, "Augmented output")->required();
  c->add_option("--emotion", o.emotion, "Emotion whose defaults apply")->required();
  c->add_option("--synonyms", o.synonyms, "Synonym lexicon TSV")->required();
  c->add_option("--n-aug", o.n_aug, "Mutants per positive sample");
  c->add_option("--swap-p", o.swap_p, "Swap probability");
  c->add_option("--replace-p", o.replace_p, "Synonym replacement probability");
  c->add_option("--insert-p", o.insert_p, "Insertion probability");
  c->add_option("--delete-p", o.delete_p, "Deletion probability");
  c->add_option("--p-mode", o.p_mode, "per_sentence|per_word");
}

int RunAugment(const Globals& g, const AugmentOpts& o) {
  const std::uint64_t seed = RequireSeed(g);
  const Emotion e = EmotionFromName(o.emotion);
  const LabeledDataset ds = RequireBinary(LoadInput(o.input, Format(g)), "augment");
  if (ds.target() != e) {
    throw ValidationError("dataset targets '" + std::string(EmotionName(ds.target())) +
                          "', not '" + o.emotion + "'");
  }
  AugmentConfig cfg = DefaultAugmentConfig(e);
  cfg.p_mode = ParseProbabilityMode(o.p_mode);
  if (o.n_aug) cfg.n_aug = *o.n_aug;
  if (o.swap_p) cfg.swap_p = *o.swap_p;
  if (o.replace_p) cfg.replace_p = *o.replace_p;
  if (o.insert_p) cfg.insert_p = *o.insert_p;
  if (o.delete_p) cfg.delete_p = *o.delete_p;
  const LexiconProvider lex = LexiconProvider::Load(o.synonyms);
  const LabeledDataset out = ExpandMinority(ds, cfg, lex, seed);
  WriteLabeled(out, o.output, Format(g));
  std::cerr << "augmented " << ds.size() << " -> " << out.size() << " samples\n";
  return 0;
}

// --- balance ------------------------------------------------------------

struct BalanceOpts {
  std::string input;
  std::string output;
  std::optional<std::size_t> target;
  std::optional<double> w0;
  std::optional<double> w1;
};

void AddBalance(CLI::App& app, BalanceOpts& o) {
  auto* c = app.add_subcommand(
      "balance", "Undersample the majority class and print class weights");
  c->add_option("--input", o.input, "Binary labeled dataset")->required();
  c->add_option("--out", o.output, "Balanced output")->required();
  c->add_option("--target", o.target, "Majority samples to keep")->required();
  c->add_option("--w0", o.w0, "Override class-0 weight");
  c->add_option("--w1", o.w1, "Override class-1 weight");
}

int RunBalance(const Globals& g, const BalanceOpts& o) {
  const std::uint64_t seed = RequireSeed(g);
  const LabeledDataset ds = RequireBinary(LoadInput(o.input, Format(g)), "balance");
  if (o.w0.has_value() != o.w1.has_value()) {
    throw ValidationError("--w0 and --w1 must be given together");
  }
  const std::size_t n0 = ds.CountLabel(0, 0);
  const std::size_t n1 = ds.CountLabel(0, 1);
  const std::uint8_t majority = n0 >= n1 ? 0 : 1;
  const LabeledDataset out = UndersampleMajority(ds, majority, *o.target, seed);
  WriteLabeled(out, o.output, Format(g));
  ClassWeights w;
  if (o.w0) {
    w = {*o.w0, *o.w1};
    if (!(w.w0 > 0.0) || !(w.w1 > 0.0)) throw ValidationError("class weights must be > 0");
  } else {
    w = DeriveClassWeights(out.CountLabel(0, 0), out.CountLabel(0, 1));
  }
  // Ready to paste into the [balance] section of an experiment config.
  std::cout << "class_weights = " << w.w0 << "," << w.w1 << '\n';
  return 0;
}

// --- train --------------------------------------------------------------

struct TrainOpts {
  std::string input;
  std::string output;
  std::string loss;
  std::optional<double> lr;
  std::optional<int> epochs;
  std::optional<int> batch_size;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> max_tokens;
  std::string stats;
  std::optional<double> w0;
  std::optional<double> w1;
  bool derive_weights = false;
};

void AddTrain(CLI::App& app, TrainOpts& o) {
  auto* c = app.add_subcommand("train", "Train the hashed linear model");
  c->add_option("--input", o.input, "Composed labeled dataset")->required();
  c->add_option("--model", o.output, "Checkpoint to write")->required();
  c->add_option("--loss", o.loss, "weighted_ce|f1_ce|recall_ce");
  c->add_option("--lr", o.lr, "Learning rate");
  c->add_option("--epochs", o.epochs, "Epochs");
  c->add_option("--batch-size", o.batch_size, "Mini-batch size");
  c->add_option("--dim", o.dim, "Hashed feature dimension (power of two)");
  c->add_option("--max-tokens", o.max_tokens, "Tokens hashed per sample");
  c->add_option("--stats", o.stats, "per_epoch|per_batch");
  c->add_option("--w0", o.w0, "Class-0 weight");
  c->add_option("--w1", o.w1, "Class-1 weight");
  c->add_flag("--derive-weights", o.derive_weights, "Derive weights from label counts");
}

int RunTrain(const Globals& g, const TrainOpts& o) {
  const std::uint64_t seed = RequireSeed(g);
  ExperimentConfig base;
  if (!g.config.empty()) base = LoadExperimentConfig(g.config);
  TrainConfig tc = base.train;
  std::size_t dim = base.feature_dim;
  if (!o.loss.empty()) tc.loss = ParseLossKind(o.loss);
  if (o.lr) tc.lr = *o.lr;
  if (o.epochs) tc.epochs = *o.epochs;
  if (o.batch_size) tc.batch_size = *o.batch_size;
  if (o.max_tokens) tc.max_tokens = *o.max_tokens;
  if (!o.stats.empty()) tc.stats = ParseStatsSchedule(o.stats);
  if (o.dim) dim = *o.dim;
  tc.seed = seed;

  const LabeledDataset ds = LoadInput(o.input, Format(g));
  if (o.w0.has_value() != o.w1.has_value()) {
    throw ValidationError("--w0 and --w1 must be given together");
  }
  if (o.derive_weights && o.w0) {
    throw ValidationError("--derive-weights conflicts with --w0/--w1");
  }
  if (o.w0) {
    tc.class_weights = {ClassWeights{*o.w0, *o.w1}};
  } else if (o.derive_weights) {
    tc.class_weights.clear();
    for (std::size_t h = 0; h < ds.heads(); ++h) {
      tc.class_weights.push_back(DeriveClassWeights(ds.CountLabel(h, 0), ds.CountLabel(h, 1)));
    }
  }
  const HashedFeaturizer featurizer(dim, DeriveSeed(seed, 5), tc.max_tokens);
  TrainResult tr = Train(ds, tc, featurizer);
  Checkpoint ckpt{.model = std::move(tr.model),
                  .featurizer = featurizer,
                  .mode = ds.mode(),
                  .target = ds.target(),
                  .config = tc};
  SaveCheckpoint(ckpt, o.output);
  for (std::size_t e = 0; e < tr.epochs.size(); ++e) {
    std::cerr << "epoch " << (e + 1) << " loss " << tr.epochs[e].mean_loss << '\n';
  }
  return 0;
}

// --- predict ------------------------------------------------------------

struct PredictOpts {
  std::string model;
  std::string input;
  std::string output;
};

void AddPredict(CLI::App& app, PredictOpts& o) {
  auto* c = app.add_subcommand("predict", "Score a composed dataset with a checkpoint");
  c->add_option("--model", o.model, "Checkpoint")->required();
  c->add_option("--input", o.input, "Composed labeled dataset")->required();
  c->add_option("--out", o.output, "JSONL predictions (default stdout)");
}

int RunPredict(const Globals& g, const PredictOpts& o) {
  const Checkpoint ckpt = LoadCheckpoint(o.model);
  const LabeledDataset ds = LoadInput(o.input, Format(g));
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!o.output.empty()) {
    file.open(o.output, std::ios::binary | std::ios::trunc);
    if (!file) throw RuntimeError("cannot open '" + o.output + "' for writing");
    out = &file;
  }
  for (const auto& s : ds.samples()) {
    const Prediction p = Predict(ckpt.model, s.text, ckpt.featurizer);
    ordered_json j = {{"id", s.id}, {"probs", p.probs}, {"decisions", p.decisions}};
    *out << j.dump() << '\n';
  }
  if (!*out) throw RuntimeError("error writing predictions");
  return 0;
}

// --- eval ---------------------------------------------------------------

struct EvalOpts {
  std::string model;
  std::string input;
  std::string report;
};

void AddEval(CLI::App& app, EvalOpts& o) {
  auto* c = app.add_subcommand("eval", "Evaluate a checkpoint on a composed dataset");
  c->add_option("--model", o.model, "Checkpoint")->required();
  c->add_option("--input", o.input, "Composed labeled dataset")->required();
  c->add_option("--report", o.report, "JSON report (default stdout)");
}

int RunEval(const Globals& g, const EvalOpts& o) {
  const Checkpoint ckpt = LoadCheckpoint(o.model);
  const LabeledDataset ds = LoadInput(o.input, Format(g));
  if (ds.heads() != ckpt.model.heads()) {
    throw ValidationError("dataset has " + std::to_string(ds.heads()) +
                          " label columns, model has " + std::to_string(ckpt.model.heads()) +
                          " heads");
  }
  if (ds.empty()) throw ValidationError("cannot evaluate an empty dataset");
  const std::size_t heads = ds.heads();
  std::vector<std::vector<std::uint8_t>> preds(heads), truth(heads);
  for (const auto& s : ds.samples()) {
    const Prediction p = Predict(ckpt.model, s.text, ckpt.featurizer);
    for (std::size_t h = 0; h < heads; ++h) {
      preds[h].push_back(p.decisions[h]);
      truth[h].push_back(s.labels[h]);
    }
  }
  MetricsReport report;
  if (ds.mode() == LabelMode::kBinary) {
    report.emotions.push_back(EvaluateEmotion(ds.target(), preds[0], truth[0]));
  } else {
    LabelMatrix t(ds.size(), heads), x(ds.size(), heads);
    for (std::size_t h = 0; h < heads; ++h) {
      for (std::size_t i = 0; i < ds.size(); ++i) {
        t.at(i, h) = truth[h][i];
        x.at(i, h) = preds[h][i];
      }
      report.emotions.push_back(EvaluateEmotion(kAllEmotions[h], preds[h], truth[h]));
    }
    report.hamming_loss = HammingLoss(t, x);
    report.hamming_score = HammingScore(t, x);
  }
  Finalize(report);
  WriteJsonFile(ToJson(report), o.report);
  return 0;
}

// --- pipeline -----------------------------------------------------------

struct PipelineOpts {
  std::string output;
};

void AddPipeline(CLI::App& app, PipelineOpts& o) {
  auto* c = app.add_subcommand("pipeline", "Run a full experiment from --config");
  c->add_option("--out", o.output, "Override the output directory");
}

int RunPipelineCmd(const Globals& g, const PipelineOpts& o) {
  if (g.config.empty()) throw ValidationError("pipeline needs --config");
  ExperimentConfig cfg = LoadExperimentConfig(g.config);
  if (g.seed) cfg.seed = g.seed;
  if (!g.format.empty()) cfg.input_format = Format(g);
  if (!o.output.empty()) cfg.output_dir = o.output;
  const PipelineResult r = RunPipeline(cfg);
  std::cout << r.report_path.string() << '\n';
  return 0;
}

// --- synth --------------------------------------------------------------

struct SynthOpts {
  std::string output;
  std::optional<std::size_t> n_samples;
  std::optional<double> ratio;
  std::optional<double> noise;
};

void AddSynth(CLI::App& app, SynthOpts& o) {
  auto* c = app.add_subcommand("synth", "Generate a synthetic voted corpus");
  c->add_option("--out", o.output, "Output directory")->required();
  c->add_option("--n-samples", o.n_samples, "Number of samples");
  c->add_option("--ratio", o.ratio, "Negatives per positive");
  c->add_option("--noise", o.noise, "Probability a positive lacks signal tokens");
}

int RunSynth(const Globals& g, const SynthOpts& o) {
  if (!g.seed && g.config.empty()) {
    throw ValidationError("synth needs --seed or a --config with a [synth] seed");
  }
  SynthSpec spec;
  if (!g.config.empty()) spec = LoadSynthSpec(g.config);
  if (g.seed) spec.seed = *g.seed;
  if (o.n_samples) spec.n_samples = *o.n_samples;
  if (o.ratio) spec.imbalance_ratio = *o.ratio;
  if (o.noise) spec.noise = *o.noise;
  const SynthCorpus synth = Synthesize(spec);
  WriteSynthCorpus(synth, o.output);
  std::cerr << "wrote " << synth.corpus.size() << " samples to " << o.output << '\n';
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Imbalanced multi-label emotion classification pipeline", "emopipe"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random stage");
  app.add_option("--config", g.config, "Experiment config file");
  app.add_option("--format", g.format, "jsonl|csv")->check(CLI::IsMember({"jsonl", "csv"}));

  IngestOpts ingest;
  SelectOpts select;
  PreprocessOpts preprocess;
  FeaturizeOpts featurize;
  AugmentOpts augment;
  BalanceOpts balance;
  TrainOpts train;
  PredictOpts predict;
  EvalOpts eval;
  PipelineOpts pipeline;
  SynthOpts synth;
  AddIngest(app, ingest);
  AddSelect(app, select);
  AddPreprocess(app, preprocess);
  AddFeaturize(app, featurize);
  AddAugment(app, augment);
  AddBalance(app, balance);
  AddTrain(app, train);
  AddPredict(app, predict);
  AddEval(app, eval);
  AddPipeline(app, pipeline);
  AddSynth(app, synth);
  // Global flags are accepted after the subcommand name too.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "ingest") return RunIngest(g, ingest);
    if (name == "select") return RunSelect(g, select);
    if (name == "preprocess") return RunPreprocess(g, preprocess);
    if (name == "featurize") return RunFeaturize(g, featurize);
    if (name == "augment") return RunAugment(g, augment);
    if (name == "balance") return RunBalance(g, balance);
    if (name == "train") return RunTrain(g, train);
    if (name == "predict") return RunPredict(g, predict);
    if (name == "eval") return RunEval(g, eval);
    if (name == "pipeline") return RunPipelineCmd(g, pipeline);
    if (name == "synth") return RunSynth(g, synth);
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.validation() ? kExitValidation : kExitRuntime;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}

}  // namespace
}  // namespace emopipe

int main(int argc, char** argv) { return emopipe::Main(argc, argv); }
