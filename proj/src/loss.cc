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

#include "emopipe/loss.h"

#include <algorithm>
#include <cmath>

#include "emopipe/error.h"

namespace emopipe {

std::string_view LossKindName(LossKind kind) {
  switch (kind) {
    case LossKind::kWeightedCe:
      return "weighted_ce";
    case LossKind::kF1Ce:
      return "f1_ce";
    case LossKind::kRecallCe:
      return "recall_ce";
  }
  return "weighted_ce";
}

LossKind ParseLossKind(std::string_view name) {
  for (LossKind k : {LossKind::kWeightedCe, LossKind::kF1Ce, LossKind::kRecallCe}) {
    if (LossKindName(k) == name) return k;
  }
  throw ValidationError("unknown loss '" + std::string(name) +
                        "' (expected weighted_ce, f1_ce or recall_ce)");
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

void CheckInputs(std::span<const double> probs,
                 std::span<const std::uint8_t> labels) {
  if (probs.size() != labels.size()) {
    throw ValidationError("loss: " + std::to_string(probs.size()) +
                          " probabilities for " + std::to_string(labels.size()) +
                          " labels");
  }
  for (double p : probs) {
    if (std::isnan(p)) throw ValidationError("loss: NaN probability");
  }
  for (std::uint8_t y : labels) {
    if (y > 1) throw ValidationError("loss: label not 0/1");
  }
}

}  // namespace

LossResult ScoreWeightedCrossEntropy(std::span<const double> probs,
                                     std::span<const std::uint8_t> labels,
                                     const ClassWeights& weights,
                                     const ClassScores& scores) {
  CheckInputs(probs, labels);
  LossResult r;
  r.grad.assign(probs.size(), 0.0);
  if (probs.empty()) return r;
  const double inv_n = 1.0 / static_cast<double>(probs.size());
  const double scale[2] = {(1.0 - scores[0]) * weights.w0,
                           (1.0 - scores[1]) * weights.w1};
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const int y = labels[i];
    const double p = std::clamp(probs[i], kProbEpsilon, 1.0 - kProbEpsilon);
    const double p_true = y ? p : 1.0 - p;
    total += scale[y] * -std::log(p_true);
    // d/dz of -log sigmoid(z) is p - 1; of -log(1 - sigmoid(z)) is p.
    r.grad[i] = scale[y] * (probs[i] - y) * inv_n;
  }
  r.loss = total * inv_n;
  return r;
}

LossResult WeightedCrossEntropy(std::span<const double> probs,
                                std::span<const std::uint8_t> labels,
                                const ClassWeights& weights) {
  return ScoreWeightedCrossEntropy(probs, labels, weights, {0.0, 0.0});
}

HeadStats ComputeHeadStats(std::span<const std::uint8_t> preds,
                           std::span<const std::uint8_t> labels) {
  if (preds.size() != labels.size()) {
    throw ValidationError("stats: prediction/label length mismatch");
  }
  // confusion[y][p]
  std::size_t confusion[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < preds.size(); ++i) ++confusion[labels[i]][preds[i]];
  HeadStats s;
  for (int c = 0; c < 2; ++c) {
    const std::size_t tp = confusion[c][c];
    const std::size_t fn = confusion[c][1 - c];
    const std::size_t fp = confusion[1 - c][c];
    s.counts[c] = tp + fn;
    const double precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    const double recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    s.recall[c] = recall;
    s.f1[c] = precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
  }
  return s;
}

}  // namespace emopipe
