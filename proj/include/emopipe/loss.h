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

#ifndef EMOPIPE_LOSS_H_
#define EMOPIPE_LOSS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "emopipe/balance.h"

namespace emopipe {

enum class LossKind { kWeightedCe, kF1Ce, kRecallCe };

std::string_view LossKindName(LossKind kind);
LossKind ParseLossKind(std::string_view name);

inline constexpr double kProbEpsilon = 1e-7;

struct LossResult {
  double loss = 0.0;
  // d loss / d logit_i, where prob_i = sigmoid(logit_i).
  std::vector<double> grad;
};

// Per-class score (F1 or recall) of one binary head; index = class label.
using ClassScores = std::array<double, 2>;

// mean_i -w[y_i] * log p_i(y_i). Probabilities are clamped to
// [eps, 1 - eps] before the log. Throws ValidationError on NaN input or
// mismatched lengths.
LossResult WeightedCrossEntropy(std::span<const double> probs,
                                std::span<const std::uint8_t> labels,
                                const ClassWeights& weights);

// (1/N) sum_c (1 - score_c) sum_{i: y_i = c} -w_c log p_i(c). The score is
// a constant of the step. With all scores 0 this equals
// WeightedCrossEntropy; with all scores 1 it is exactly 0.
LossResult ScoreWeightedCrossEntropy(std::span<const double> probs,
                                     std::span<const std::uint8_t> labels,
                                     const ClassWeights& weights,
                                     const ClassScores& scores);

inline LossResult F1CrossEntropy(std::span<const double> probs,
                                 std::span<const std::uint8_t> labels,
                                 const ClassWeights& weights,
                                 const ClassScores& f1) {
  return ScoreWeightedCrossEntropy(probs, labels, weights, f1);
}

inline LossResult RecallCrossEntropy(std::span<const double> probs,
                                     std::span<const std::uint8_t> labels,
                                     const ClassWeights& weights,
                                     const ClassScores& recall) {
  return ScoreWeightedCrossEntropy(probs, labels, weights, recall);
}

// Per-class F1 and recall of one head, computed from 0/1 predictions.
// Class c's score treats c as the positive class; 0/0 counts as 0.
struct HeadStats {
  ClassScores f1{0.0, 0.0};
  ClassScores recall{0.0, 0.0};
  std::array<std::size_t, 2> counts{0, 0};
};

HeadStats ComputeHeadStats(std::span<const std::uint8_t> preds,
                           std::span<const std::uint8_t> labels);

double Sigmoid(double z);

}  // namespace emopipe

#endif  // EMOPIPE_LOSS_H_
