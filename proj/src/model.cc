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

#include "emopipe/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include "emopipe/features.h"
#include "emopipe/random.h"
#include "emopipe/utf8.h"
#include "json.hpp"

namespace emopipe {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

HashedFeaturizer::HashedFeaturizer(std::size_t dim, std::uint64_t seed,
                                   std::size_t max_tokens)
    : dim_(dim), seed_(seed), max_tokens_(max_tokens) {
  if (dim < kMinDim || (dim & (dim - 1)) != 0 || dim > (std::size_t{1} << 31)) {
    throw ValidationError("feature dim " + std::to_string(dim) +
                          " must be a power of two in [2^10, 2^31]");
  }
}

std::uint32_t HashedFeaturizer::Bucket(std::string_view token,
                                       std::size_t segment) const {
  const std::uint64_t h = Mix64(Fnv1a(token) ^ DeriveSeed(seed_, segment));
  return static_cast<std::uint32_t>(h & (dim_ - 1));
}

SparseVector HashedFeaturizer::Featurize(std::string_view text) const {
  std::map<std::uint32_t, double> counts;
  std::size_t segment = 0;
  std::size_t used = 0;
  for (const auto& tok : utf8::Tokens(text)) {
    if (tok == kSeparator) {
      ++segment;
      continue;
    }
    if (used == max_tokens_) break;
    ++used;
    counts[Bucket(tok, segment)] += 1.0;
  }
  return SparseVector(counts.begin(), counts.end());
}

LinearModel::LinearModel(std::size_t dim, std::size_t heads)
    : dim_(dim), heads_(heads), weights_(dim * heads, 0.0), bias_(heads, 0.0) {
  if (heads != 1 && heads != kNumEmotions) {
    throw ValidationError("model heads must be 1 or 6");
  }
}

double LinearModel::Logit(const SparseVector& x, std::size_t head) const {
  double z = bias_[head];
  for (const auto& [idx, v] : x) z += weights_[idx * heads_ + head] * v;
  return z;
}

bool LinearModel::AllFinite() const {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(weights_.begin(), weights_.end(), finite) &&
         std::all_of(bias_.begin(), bias_.end(), finite);
}

StatsSchedule ParseStatsSchedule(std::string_view name) {
  if (name == "per_epoch") return StatsSchedule::kPerEpoch;
  if (name == "per_batch") return StatsSchedule::kPerBatch;
  throw ValidationError("unknown stats schedule '" + std::string(name) + "'");
}

std::string_view StatsScheduleName(StatsSchedule s) {
  return s == StatsSchedule::kPerBatch ? "per_batch" : "per_epoch";
}

void TrainConfig::Validate() const {
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ValidationError("lr must be > 0");
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
  if (batch_size < 1) throw ValidationError("batch_size must be >= 1");
  if (class_weights.empty()) throw ValidationError("class weights missing");
  for (const auto& w : class_weights) {
    if (!(w.w0 > 0.0) || !(w.w1 > 0.0)) {
      throw ValidationError("class weights must be > 0");
    }
  }
}

const ClassWeights& TrainConfig::WeightsFor(std::size_t head) const {
  return class_weights.size() == 1 ? class_weights[0] : class_weights.at(head);
}

DivergenceError::DivergenceError(int epoch, std::size_t batch)
    : RuntimeError("training diverged at epoch " + std::to_string(epoch) +
                   ", batch " + std::to_string(batch)),
      epoch_(epoch),
      batch_(batch) {}

TrainResult Train(const LabeledDataset& ds, const TrainConfig& cfg,
                  const HashedFeaturizer& featurizer) {
  cfg.Validate();
  if (ds.empty()) throw ValidationError("cannot train on an empty dataset");
  const std::size_t heads = ds.heads();
  if (cfg.class_weights.size() != 1 && cfg.class_weights.size() != heads) {
    throw ValidationError("expected 1 or " + std::to_string(heads) +
                          " class-weight pairs");
  }

  const std::size_t n = ds.size();
  std::vector<SparseVector> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = featurizer.Featurize(ds.samples()[i].text);

  TrainResult result;
  LinearModel& model = result.model;
  model = LinearModel(featurizer.dim(), heads);

  std::vector<HeadStats> stats(heads);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto batch = static_cast<std::size_t>(cfg.batch_size);

  // Column-major per head: preds[h][i].
  std::vector<std::vector<std::uint8_t>> preds(heads, std::vector<std::uint8_t>(n));
  std::vector<std::vector<std::uint8_t>> labels(heads, std::vector<std::uint8_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t h = 0; h < heads; ++h) labels[h][i] = ds.samples()[i].labels[h];
  }

  std::vector<double> probs;
  std::vector<std::uint8_t> batch_labels;
  std::vector<std::uint8_t> batch_preds;
  std::vector<std::vector<double>> grads(heads);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    Rng rng(DeriveSeed(cfg.seed, static_cast<std::uint64_t>(epoch)));
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.Below(i + 1)]);

    double epoch_loss = 0.0;
    std::size_t n_batches = 0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      const std::size_t b = end - start;
      double batch_loss = 0.0;

      for (std::size_t h = 0; h < heads; ++h) {
        probs.resize(b);
        batch_labels.resize(b);
        batch_preds.resize(b);
        for (std::size_t k = 0; k < b; ++k) {
          const std::size_t i = order[start + k];
          probs[k] = Sigmoid(model.Logit(x[i], h));
          batch_labels[k] = labels[h][i];
          batch_preds[k] = probs[k] >= 0.5 ? 1 : 0;
          preds[h][i] = batch_preds[k];
        }
        const ClassWeights& w = cfg.WeightsFor(h);
        LossResult lr;
        switch (cfg.loss) {
          case LossKind::kWeightedCe:
            lr = WeightedCrossEntropy(probs, batch_labels, w);
            break;
          case LossKind::kF1Ce:
            lr = F1CrossEntropy(probs, batch_labels, w, stats[h].f1);
            break;
          case LossKind::kRecallCe:
            lr = RecallCrossEntropy(probs, batch_labels, w, stats[h].recall);
            break;
        }
        batch_loss += lr.loss;
        grads[h] = std::move(lr.grad);
        if (cfg.stats == StatsSchedule::kPerBatch) {
          stats[h] = ComputeHeadStats(batch_preds, batch_labels);
        }
      }
      if (!std::isfinite(batch_loss)) throw DivergenceError(epoch, n_batches);

      // All logits above used the pre-step weights, so this is one exact
      // gradient step on the batch loss.
      for (std::size_t h = 0; h < heads; ++h) {
        double bias_grad = 0.0;
        for (std::size_t k = 0; k < b; ++k) {
          const double g = grads[h][k];
          if (g == 0.0) continue;
          bias_grad += g;
          for (const auto& [idx, v] : x[order[start + k]]) {
            model.weight(idx, h) -= cfg.lr * g * v;
          }
        }
        model.bias(h) -= cfg.lr * bias_grad;
        if (!std::isfinite(model.bias(h))) throw DivergenceError(epoch, n_batches);
      }
      epoch_loss += batch_loss;
      ++n_batches;
    }

    EpochLog log;
    log.mean_loss = epoch_loss / static_cast<double>(n_batches);
    for (std::size_t h = 0; h < heads; ++h) {
      log.stats.push_back(ComputeHeadStats(preds[h], labels[h]));
    }
    if (cfg.stats == StatsSchedule::kPerEpoch) stats = log.stats;
    result.epochs.push_back(std::move(log));
  }
  if (!model.AllFinite()) throw DivergenceError(cfg.epochs, 0);
  return result;
}

Prediction Predict(const LinearModel& model, std::string_view text,
                   const HashedFeaturizer& featurizer) {
  if (featurizer.dim() != model.dim()) {
    throw ValidationError("featurizer dim " + std::to_string(featurizer.dim()) +
                          " does not match model dim " + std::to_string(model.dim()));
  }
  const SparseVector x = featurizer.Featurize(text);
  Prediction p;
  for (std::size_t h = 0; h < model.heads(); ++h) {
    const double prob = Sigmoid(model.Logit(x, h));
    p.probs.push_back(prob);
    p.decisions.push_back(prob >= 0.5 ? 1 : 0);
  }
  return p;
}

void SaveCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  using nlohmann::ordered_json;
  const LinearModel& m = ckpt.model;
  ordered_json j;
  j["format"] = "emopipe-linear";
  j["version"] = kCheckpointVersion;
  j["mode"] = ckpt.mode == LabelMode::kBinary ? "binary" : "multilabel";
  if (ckpt.mode == LabelMode::kBinary) j["emotion"] = EmotionName(ckpt.target);
  j["dim"] = ckpt.featurizer.dim();
  j["hash_seed"] = ckpt.featurizer.seed();
  j["max_tokens"] = ckpt.featurizer.max_tokens();
  j["heads"] = m.heads();

  ordered_json config;
  config["loss"] = LossKindName(ckpt.config.loss);
  ordered_json weights = ordered_json::array();
  for (const auto& w : ckpt.config.class_weights) weights.push_back({w.w0, w.w1});
  config["class_weights"] = weights;
  config["lr"] = ckpt.config.lr;
  config["epochs"] = ckpt.config.epochs;
  config["batch_size"] = ckpt.config.batch_size;
  config["seed"] = ckpt.config.seed;
  config["stats"] = StatsScheduleName(ckpt.config.stats);
  j["config"] = config;

  ordered_json bias = ordered_json::array();
  for (std::size_t h = 0; h < m.heads(); ++h) bias.push_back(m.bias(h));
  j["bias"] = bias;
  // Rows with any non-zero weight: [index, [w_head0, ...]].
  ordered_json rows = ordered_json::array();
  for (std::size_t idx = 0; idx < m.dim(); ++idx) {
    bool any = false;
    for (std::size_t h = 0; h < m.heads(); ++h) any |= m.weight(idx, h) != 0.0;
    if (!any) continue;
    ordered_json vals = ordered_json::array();
    for (std::size_t h = 0; h < m.heads(); ++h) vals.push_back(m.weight(idx, h));
    rows.push_back({idx, vals});
  }
  j["weights"] = rows;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeError("cannot open '" + path.string() + "' for writing");
  out << j.dump() << '\n';
  out.close();
  if (!out) throw RuntimeError("error writing '" + path.string() + "'");
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  using nlohmann::json;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
    if (j.at("format") != "emopipe-linear") {
      throw ValidationError("not an emopipe checkpoint");
    }
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw ValidationError("unsupported checkpoint version " +
                            j.at("version").dump());
    }
    Checkpoint c{.featurizer = HashedFeaturizer(j.at("dim").get<std::size_t>(),
                                                j.at("hash_seed").get<std::uint64_t>(),
                                                j.at("max_tokens").get<std::size_t>())};
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "binary") {
      c.mode = LabelMode::kBinary;
      c.target = EmotionFromName(j.at("emotion").get<std::string>());
    } else if (mode == "multilabel") {
      c.mode = LabelMode::kMultiLabel;
    } else {
      throw ValidationError("unknown checkpoint mode '" + mode + "'");
    }
    const auto heads = j.at("heads").get<std::size_t>();
    if (heads != (c.mode == LabelMode::kBinary ? 1u : kNumEmotions)) {
      throw ValidationError("checkpoint head count does not match its mode");
    }
    c.model = LinearModel(c.featurizer.dim(), heads);

    const json& cfg = j.at("config");
    c.config.loss = ParseLossKind(cfg.at("loss").get<std::string>());
    c.config.class_weights.clear();
    for (const auto& w : cfg.at("class_weights")) {
      c.config.class_weights.push_back({w.at(0).get<double>(), w.at(1).get<double>()});
    }
    c.config.lr = cfg.at("lr").get<double>();
    c.config.epochs = cfg.at("epochs").get<int>();
    c.config.batch_size = cfg.at("batch_size").get<int>();
    c.config.seed = cfg.at("seed").get<std::uint64_t>();
    c.config.stats = ParseStatsSchedule(cfg.at("stats").get<std::string>());
    c.config.max_tokens = c.featurizer.max_tokens();

    const json& bias = j.at("bias");
    if (bias.size() != heads) throw ValidationError("bias length mismatch");
    for (std::size_t h = 0; h < heads; ++h) c.model.bias(h) = bias.at(h).get<double>();
    for (const auto& row : j.at("weights")) {
      const auto idx = row.at(0).get<std::size_t>();
      const json& vals = row.at(1);
      if (idx >= c.model.dim() || vals.size() != heads) {
        throw ValidationError("malformed weight row");
      }
      for (std::size_t h = 0; h < heads; ++h) c.model.weight(idx, h) = vals.at(h).get<double>();
    }
    if (!c.model.AllFinite()) throw ValidationError("checkpoint has non-finite weights");
    return c;
  } catch (const json::exception& e) {
    throw ValidationError("malformed checkpoint '" + path.string() + "': " + e.what());
  }
}

}  // namespace emopipe
