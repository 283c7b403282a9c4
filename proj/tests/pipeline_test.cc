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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "emopipe/random.h"
#include "json.hpp"
#include "test_util.h"

namespace emopipe {
namespace {

using testing::DataFile;
using testing::ReadFile;
using testing::TempDir;
using testing::WriteFile;

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    SynthSpec spec;
    spec.n_samples = 500;
    spec.imbalance_ratio = 4;
    spec.vocabulary_size = 120;
    spec.seed = 3;
    WriteSynthCorpus(Synthesize(spec), dir_ / "synth");
  }

  // Writes a config under the temp dir; `extra` is appended verbatim.
  std::filesystem::path Config(const std::string& experiment, const std::string& extra,
                               const std::string& out = "out") {
    const std::string text =
        "[paths]\n"
        "input = synth/corpus.jsonl\n"
        "dictionary = " + DataFile("en_fa_dict.tsv").string() + "\n"
        "translit = " + DataFile("translit.tsv").string() + "\n"
        "vocabulary = synth/vocabulary.txt\n"
        "synonyms = synth/synonyms.tsv\n"
        "pos_lexicon = " + DataFile("pos_lexicon.tsv").string() + "\n"
        "pos_suffixes = " + DataFile("pos_suffixes.tsv").string() + "\n"
        "output = " + out + "\n"
        "[experiment]\n" + experiment +
        "seed = 7\n"
        "[train]\n"
        "epochs = 2\n"
        "dim = 4096\n" + extra;
    const auto path = dir_ / (out + ".ini");
    WriteFile(path, text);
    return path;
  }

  std::filesystem::path BinaryConfig(const std::string& out = "out") {
    return Config("mode = binary_per_emotion\nemotions = anger\n",
                  "loss = f1_ce\n"
                  "[augment]\nenabled = true\n"
                  "[balance]\nundersample = true\nratio = 2\nclass_weights = derive\n",
                  out);
  }

  TempDir dir_;
};

TEST_F(PipelineTest, ConfigResolvesRelativePaths) {
  const ExperimentConfig cfg = LoadExperimentConfig(BinaryConfig());
  EXPECT_EQ(cfg.input, dir_ / "synth/corpus.jsonl");
  EXPECT_EQ(cfg.output_dir, dir_ / "out");
  ASSERT_EQ(cfg.emotions.size(), 1u);
  EXPECT_EQ(cfg.emotions[0], Emotion::kAnger);
  EXPECT_EQ(*cfg.seed, 7u);
  EXPECT_TRUE(cfg.augment);
  EXPECT_EQ(cfg.weight_source, WeightSource::kDerive);
  EXPECT_EQ(cfg.train.loss, LossKind::kF1Ce);
  EXPECT_EQ(cfg.feature_dim, 4096u);
}

TEST_F(PipelineTest, ConfigRejectsBadInput) {
  EXPECT_THROW(LoadExperimentConfig(Config("", "bogus = 1\n")), ValidationError);
  EXPECT_THROW(LoadExperimentConfig(Config("mode = sideways\n", "")), ValidationError);
  EXPECT_THROW(LoadExperimentConfig(Config("eval_fraction = 1.5\n", "")).Validate(),
               ValidationError);
  EXPECT_THROW(LoadExperimentConfig(Config("", "lr = -1\n")).Validate(), ValidationError);
  WriteFile(dir_ / "x.ini", "stray = 1\n");
  EXPECT_THROW(LoadExperimentConfig(dir_ / "x.ini"), ValidationError);
  EXPECT_THROW(LoadExperimentConfig(dir_ / "missing.ini"), ValidationError);

  ExperimentConfig cfg = LoadExperimentConfig(BinaryConfig());
  cfg.seed.reset();
  EXPECT_THROW(cfg.Validate(), ValidationError);
  cfg = LoadExperimentConfig(BinaryConfig());
  cfg.input = dir_ / "nope.jsonl";
  EXPECT_THROW(cfg.Validate(), ValidationError);
}

TEST_F(PipelineTest, SmokeRunWritesFullReport) {
  const PipelineResult r = RunPipeline(LoadExperimentConfig(BinaryConfig()));
  ASSERT_EQ(r.report.emotions.size(), 1u);
  const auto j = nlohmann::json::parse(ReadFile(r.report_path));
  const auto& anger = j["emotions"]["anger"];
  for (const char* key : {"accuracy", "precision", "recall", "f1", "support", "positives"}) {
    ASSERT_TRUE(anger.contains(key)) << key;
  }
  EXPECT_GT(anger["support"].get<int>(), 0);
  for (const char* f : {"config.json", "anger/selected.jsonl", "anger/train.jsonl",
                        "anger/eval.jsonl", "anger/augmented.jsonl", "anger/balanced.jsonl",
                        "anger/train_prepared.jsonl", "anger/eval_prepared.jsonl",
                        "anger/model.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir_ / "out" / f)) << f;
  }
  EXPECT_FALSE(std::filesystem::exists(dir_ / "out/.failed"));
}

TEST_F(PipelineTest, ReportIsByteIdenticalAcrossRuns) {
  const auto a = RunPipeline(LoadExperimentConfig(BinaryConfig("a")));
  const auto b = RunPipeline(LoadExperimentConfig(BinaryConfig("b")));
  const std::string ra = ReadFile(a.report_path), rb = ReadFile(b.report_path);
  EXPECT_FALSE(ra.empty());
  EXPECT_EQ(ra, rb);
  EXPECT_EQ(ReadFile(dir_ / "a/anger/model.json"), ReadFile(dir_ / "b/anger/model.json"));
}

TEST_F(PipelineTest, MultiLabelReportsHamming) {
  const auto cfg = LoadExperimentConfig(
      Config("mode = multilabel\n", "[selection]\npolicy = threshold\nt = 3\n"));
  const PipelineResult r = RunPipeline(cfg);
  EXPECT_EQ(r.report.emotions.size(), kNumEmotions);
  const auto j = nlohmann::json::parse(ReadFile(r.report_path));
  EXPECT_TRUE(j.contains("hamming_loss"));
  EXPECT_TRUE(j.contains("hamming_score"));
  EXPECT_TRUE(j.contains("macro_f1"));
  const double loss = j["hamming_loss"].get<double>();
  EXPECT_GE(loss, 0.0);
  EXPECT_LE(loss, 1.0);
}

TEST_F(PipelineTest, EvalSplitIsIsolated) {
  const PipelineResult r = RunPipeline(LoadExperimentConfig(BinaryConfig()));
  ASSERT_EQ(r.eval_ids.size(), 1u);
  const LabeledDataset eval = LoadLabeled(dir_ / "out/anger/eval.jsonl", FileFormat::kJsonl);
  std::vector<std::string> split_ids;
  for (const auto& s : eval.samples()) split_ids.push_back(s.id);
  EXPECT_EQ(r.eval_ids[0], split_ids);

  const auto j = nlohmann::json::parse(ReadFile(r.report_path));
  EXPECT_EQ(j["runs"][0]["eval_ids"].get<std::vector<std::string>>(), split_ids);

  const std::set<std::string> eval_set(split_ids.begin(), split_ids.end());
  bool saw_child = false;
  for (const std::string& id : r.train_ids[0]) {
    EXPECT_EQ(eval_set.count(id), 0u) << id;
    const auto pos = id.find("~aug");
    if (pos != std::string::npos) {
      saw_child = true;
      EXPECT_EQ(eval_set.count(id.substr(0, pos)), 0u) << id;
    }
  }
  EXPECT_TRUE(saw_child);
}

TEST_F(PipelineTest, FailureLeavesMarker) {
  ExperimentConfig cfg = LoadExperimentConfig(BinaryConfig());
  WriteFile(dir_ / "broken.jsonl", "{\"id\":\"a\",\"text\":\"x\",\"votes\":[9,0,0,0,0,0]}\n");
  cfg.input = dir_ / "broken.jsonl";
  try {
    RunPipeline(cfg);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "ingest");
    EXPECT_TRUE(e.validation());
  }
  const std::string marker = ReadFile(dir_ / "out/.failed");
  EXPECT_NE(marker.find("stage: ingest"), std::string::npos);
  EXPECT_NE(marker.find("cause:"), std::string::npos);

  // A clean re-run clears the marker.
  RunPipeline(LoadExperimentConfig(BinaryConfig()));
  EXPECT_FALSE(std::filesystem::exists(dir_ / "out/.failed"));
}

TEST_F(PipelineTest, StagesReproduceFromPersistedInputs) {
  const ExperimentConfig cfg = LoadExperimentConfig(BinaryConfig());
  RunPipeline(cfg);
  const auto run = dir_ / "out/anger";
  const auto load = [&](const char* name) { return LoadLabeled(run / name, FileFormat::kJsonl); };
  const auto bytes = [](const LabeledDataset& ds, const std::filesystem::path& p) {
    WriteLabeled(ds, p, FileFormat::kJsonl);
    return ReadFile(p);
  };
  const Resources res = Resources::Load(cfg);
  const std::uint64_t seed = *cfg.seed;

  const LabeledDataset train = load("train.jsonl");
  const LabeledDataset augmented =
      ExpandMinority(train, cfg.augment_configs[Index(Emotion::kAnger)], res.synonyms,
                     DeriveSeed(seed, 2));
  EXPECT_EQ(bytes(augmented, dir_ / "aug.jsonl"), ReadFile(run / "augmented.jsonl"));

  const LabeledDataset aug_in = load("augmented.jsonl");
  const std::size_t n0 = aug_in.CountLabel(0, 0), n1 = aug_in.CountLabel(0, 1);
  const std::size_t target = std::min(std::max(n0, n1), 2 * std::min(n0, n1));
  const LabeledDataset balanced =
      UndersampleMajority(aug_in, n0 >= n1 ? 0 : 1, target, DeriveSeed(seed, 3));
  EXPECT_EQ(bytes(balanced, dir_ / "bal.jsonl"), ReadFile(run / "balanced.jsonl"));

  EXPECT_EQ(bytes(PrepareDataset(load("balanced.jsonl"), res), dir_ / "prep.jsonl"),
            ReadFile(run / "train_prepared.jsonl"));
  EXPECT_EQ(bytes(PrepareDataset(load("eval.jsonl"), res), dir_ / "evprep.jsonl"),
            ReadFile(run / "eval_prepared.jsonl"));
}

}  // namespace
}  // namespace emopipe
