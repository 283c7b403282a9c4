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

#include "emopipe/metrics.h"

#include <string>

#include "emopipe/error.h"

namespace emopipe {

namespace {

double Ratio(std::size_t num, std::size_t den) {
  return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

double Harmonic(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

void CheckShapes(const LabelMatrix& a, const LabelMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw ValidationError("label matrices differ in shape (" +
                          std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                          " vs " + std::to_string(b.rows) + "x" +
                          std::to_string(b.cols) + ")");
  }
  if (a.rows == 0 || a.cols == 0) throw ValidationError("empty label matrix");
  if (a.cells.size() != a.rows * a.cols || b.cells.size() != b.rows * b.cols) {
    throw ValidationError("label matrix storage does not match its shape");
  }
}

}  // namespace

BinaryMetrics ComputeBinaryMetrics(std::span<const std::uint8_t> preds,
                                   std::span<const std::uint8_t> labels) {
  if (preds.size() != labels.size()) {
    throw ValidationError("metrics: " + std::to_string(preds.size()) +
                          " predictions for " + std::to_string(labels.size()) +
                          " labels");
  }
  if (preds.empty()) throw ValidationError("metrics: empty input");
  std::size_t tp = 0, fp = 0, fn = 0, correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const bool p = preds[i] != 0, y = labels[i] != 0;
    correct += p == y;
    tp += p && y;
    fp += p && !y;
    fn += !p && y;
  }
  BinaryMetrics m;
  m.accuracy = Ratio(correct, preds.size());
  m.precision = Ratio(tp, tp + fp);
  m.recall = Ratio(tp, tp + fn);
  m.f1 = Harmonic(m.precision, m.recall);
  return m;
}

double HammingLoss(const LabelMatrix& truth, const LabelMatrix& pred) {
  CheckShapes(truth, pred);
  std::size_t diff = 0;
  for (std::size_t k = 0; k < truth.cells.size(); ++k) {
    diff += (truth.cells[k] != 0) ^ (pred.cells[k] != 0);
  }
  return Ratio(diff, truth.cells.size());
}

double HammingScore(const LabelMatrix& truth, const LabelMatrix& pred) {
  CheckShapes(truth, pred);
  double total = 0.0;
  for (std::size_t r = 0; r < truth.rows; ++r) {
    std::size_t inter = 0, uni = 0;
    for (std::size_t c = 0; c < truth.cols; ++c) {
      const bool y = truth.at(r, c) != 0, x = pred.at(r, c) != 0;
      inter += y && x;
      uni += y || x;
    }
    total += uni ? static_cast<double>(inter) / static_cast<double>(uni) : 1.0;
  }
  return total / static_cast<double>(truth.rows);
}

double MacroF1(std::span<const double> per_emotion_f1) {
  if (per_emotion_f1.size() != kNumEmotions) {
    throw ValidationError("macro-F1 needs exactly 6 values, got " +
                          std::to_string(per_emotion_f1.size()));
  }
  double sum = 0.0;
  for (double f : per_emotion_f1) {
    if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("F1 value outside [0,1]");
    sum += f;
  }
  return sum / static_cast<double>(kNumEmotions);
}

EmotionReport EvaluateEmotion(Emotion emotion,
                              std::span<const std::uint8_t> preds,
                              std::span<const std::uint8_t> labels) {
  EmotionReport r;
  r.emotion = emotion;
  r.positive = ComputeBinaryMetrics(preds, labels);
  std::vector<std::uint8_t> inv_p(preds.size()), inv_y(labels.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    inv_p[i] = preds[i] ? 0 : 1;
    inv_y[i] = labels[i] ? 0 : 1;
  }
  const BinaryMetrics negative = ComputeBinaryMetrics(inv_p, inv_y);
  r.macro_binary_f1 = (r.positive.f1 + negative.f1) / 2.0;
  r.support = labels.size();
  for (std::uint8_t y : labels) r.positives += y != 0;
  return r;
}

void Finalize(MetricsReport& report) {
  report.macro_f1.reset();
  if (report.emotions.size() != kNumEmotions) return;
  std::vector<double> f1(kNumEmotions, -1.0);
  for (const auto& e : report.emotions) f1[Index(e.emotion)] = e.positive.f1;
  for (double v : f1) {
    if (v < 0) return;
  }
  report.macro_f1 = MacroF1(f1);
}

nlohmann::ordered_json ToJson(const MetricsReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json emotions = nlohmann::ordered_json::object();
  for (const auto& e : report.emotions) {
    nlohmann::ordered_json o;
    o["accuracy"] = e.positive.accuracy;
    o["precision"] = e.positive.precision;
    o["recall"] = e.positive.recall;
    o["f1"] = e.positive.f1;
    o["macro_binary_f1"] = e.macro_binary_f1;
    o["support"] = e.support;
    o["positives"] = e.positives;
    emotions[std::string(EmotionName(e.emotion))] = o;
  }
  j["emotions"] = emotions;
  if (report.macro_f1) j["macro_f1"] = *report.macro_f1;
  if (report.hamming_loss) j["hamming_loss"] = *report.hamming_loss;
  if (report.hamming_score) j["hamming_score"] = *report.hamming_score;
  return j;
}

}  // namespace emopipe
