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

#ifndef EMOPIPE_MODEL_H_
#define EMOPIPE_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emopipe/balance.h"
#include "emopipe/corpus.h"
#include "emopipe/error.h"
#include "emopipe/loss.h"

namespace emopipe {

// Sorted by index, no duplicate indices, all values > 0.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

// Hashed bag of whitespace tokens. Each `</s></s>`-delimited segment hashes
// with its own positional salt so identical tokens in different segments
// land in different buckets.
class HashedFeaturizer {
 public:
  static constexpr std::size_t kDefaultDim = std::size_t{1} << 18;
  static constexpr std::size_t kMinDim = std::size_t{1} << 10;
  static constexpr std::size_t kDefaultMaxTokens = 256;

  // Throws ValidationError unless dim is a power of two >= kMinDim.
  explicit HashedFeaturizer(std::size_t dim = kDefaultDim,
                            std::uint64_t seed = 0,
                            std::size_t max_tokens = kDefaultMaxTokens);

  std::size_t dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t max_tokens() const { return max_tokens_; }

  // Bucket of `token` in segment `segment`.
  std::uint32_t Bucket(std::string_view token, std::size_t segment) const;

  SparseVector Featurize(std::string_view text) const;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
  std::size_t max_tokens_;
};

// Dense weights [dim x heads] with one sigmoid output per head.
class LinearModel {
 public:
  LinearModel() = default;
  LinearModel(std::size_t dim, std::size_t heads);

  std::size_t dim() const { return dim_; }
  std::size_t heads() const { return heads_; }

  double weight(std::size_t index, std::size_t head) const {
    return weights_[index * heads_ + head];
  }
  double& weight(std::size_t index, std::size_t head) {
    return weights_[index * heads_ + head];
  }
  double bias(std::size_t head) const { return bias_[head]; }
  double& bias(std::size_t head) { return bias_[head]; }

  double Logit(const SparseVector& x, std::size_t head) const;

  const std::vector<double>& raw_weights() const { return weights_; }
  bool AllFinite() const;

  friend bool operator==(const LinearModel&, const LinearModel&) = default;

 private:
  std::size_t dim_ = 0;
  std::size_t heads_ = 0;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

enum class StatsSchedule {
  // Class scores come from the previous epoch's training predictions.
  kPerEpoch,
  // Class scores come from the previous batch's predictions.
  kPerBatch,
};

StatsSchedule ParseStatsSchedule(std::string_view name);
std::string_view StatsScheduleName(StatsSchedule s);

struct TrainConfig {
  LossKind loss = LossKind::kWeightedCe;
  // One entry per head, or a single entry broadcast to all heads.
  std::vector<ClassWeights> class_weights{ClassWeights{}};
  double lr = 0.1;
  int epochs = 5;
  int batch_size = 16;
  std::size_t max_tokens = HashedFeaturizer::kDefaultMaxTokens;
  std::uint64_t seed = 0;
  StatsSchedule stats = StatsSchedule::kPerEpoch;

  // Throws ValidationError on lr <= 0, epochs < 1, batch_size < 1.
  void Validate() const;
  const ClassWeights& WeightsFor(std::size_t head) const;
};

// Thrown when the loss or a weight stops being finite.
class DivergenceError : public RuntimeError {
 public:
  DivergenceError(int epoch, std::size_t batch);
  int epoch() const { return epoch_; }
  std::size_t batch() const { return batch_; }

 private:
  int epoch_;
  std::size_t batch_;
};

struct EpochLog {
  double mean_loss = 0.0;
  std::vector<HeadStats> stats;
};

struct TrainResult {
  LinearModel model;
  std::vector<EpochLog> epochs;
};

// Mini-batch gradient descent; deterministic given cfg.seed.
TrainResult Train(const LabeledDataset& ds, const TrainConfig& cfg,
                  const HashedFeaturizer& featurizer);

struct Prediction {
  std::vector<double> probs;
  std::vector<std::uint8_t> decisions;
};

// Sigmoid per head, decision = prob >= 0.5. Throws ValidationError when the
// featurizer and model dimensions differ.
Prediction Predict(const LinearModel& model, std::string_view text,
                   const HashedFeaturizer& featurizer);

// Everything needed to reproduce predictions from a file.
struct Checkpoint {
  LinearModel model;
  HashedFeaturizer featurizer;
  LabelMode mode = LabelMode::kBinary;
  Emotion target = Emotion::kAnger;
  TrainConfig config;
};

inline constexpr int kCheckpointVersion = 1;

void SaveCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace emopipe

#endif  // EMOPIPE_MODEL_H_
