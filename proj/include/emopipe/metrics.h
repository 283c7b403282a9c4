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

#ifndef EMOPIPE_METRICS_H_
#define EMOPIPE_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "emopipe/emotion.h"
#include "json.hpp"

namespace emopipe {

struct BinaryMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Positive-class metrics; 0/0 is taken as 0. Throws ValidationError on
// length mismatch or empty input.
BinaryMetrics ComputeBinaryMetrics(std::span<const std::uint8_t> preds,
                                   std::span<const std::uint8_t> labels);

// Row-major N x L 0/1 matrix.
struct LabelMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> cells;

  LabelMatrix() = default;
  LabelMatrix(std::size_t rows, std::size_t cols)
      : rows(rows), cols(cols), cells(rows * cols, 0) {}

  std::uint8_t at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
  std::uint8_t& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }
};

// Fraction of cells where truth and prediction disagree.
double HammingLoss(const LabelMatrix& truth, const LabelMatrix& pred);

// Mean per-row Jaccard of positive label sets; an empty/empty row scores 1.
double HammingScore(const LabelMatrix& truth, const LabelMatrix& pred);

// Mean of exactly six per-emotion F1 values.
double MacroF1(std::span<const double> per_emotion_f1);

struct EmotionReport {
  Emotion emotion = Emotion::kAnger;
  BinaryMetrics positive;
  // Mean of class-0 and class-1 F1.
  double macro_binary_f1 = 0.0;
  std::size_t support = 0;
  std::size_t positives = 0;
};

struct MetricsReport {
  std::vector<EmotionReport> emotions;
  // Present when all six emotions were evaluated.
  std::optional<double> macro_f1;
  std::optional<double> hamming_loss;
  std::optional<double> hamming_score;
};

EmotionReport EvaluateEmotion(Emotion emotion,
                              std::span<const std::uint8_t> preds,
                              std::span<const std::uint8_t> labels);

// Fills macro_f1 when the report covers all six emotions.
void Finalize(MetricsReport& report);

nlohmann::ordered_json ToJson(const MetricsReport& report);

}  // namespace emopipe

#endif  // EMOPIPE_METRICS_H_
