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

#ifndef EMOPIPE_BALANCE_H_
#define EMOPIPE_BALANCE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "emopipe/corpus.h"

namespace emopipe {

// Loss multipliers for class 0 and class 1. The majority class is anchored
// at 1.
struct ClassWeights {
  double w0 = 1.0;
  double w1 = 1.0;

  double of(int label) const { return label ? w1 : w0; }
  friend bool operator==(const ClassWeights&, const ClassWeights&) = default;
};

// Majority gets 1, minority gets floor(majority / minority) (at least 1).
// Throws ValidationError("degenerate class") when a count is zero.
ClassWeights DeriveClassWeights(std::size_t count0, std::size_t count1);

// Draws exactly `target` samples without replacement, keep-weight
// 1 / word_count, via exponential keys (-ln(u) / w, keep the smallest).
// Relative order is preserved. Throws ValidationError if target exceeds the
// input size or a sample has no tokens.
std::vector<LabeledSample> Undersample(const std::vector<LabeledSample>& samples,
                                       std::size_t target, std::uint64_t seed);

// Undersamples the label-`majority_label` part of a binary dataset down to
// `target` and keeps every other sample. Relative order is preserved.
LabeledDataset UndersampleMajority(const LabeledDataset& ds,
                                   std::uint8_t majority_label,
                                   std::size_t target, std::uint64_t seed);

}  // namespace emopipe

#endif  // EMOPIPE_BALANCE_H_
