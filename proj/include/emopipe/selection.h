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

#ifndef EMOPIPE_SELECTION_H_
#define EMOPIPE_SELECTION_H_

#include <variant>

#include "emopipe/corpus.h"
#include "emopipe/emotion.h"

namespace emopipe {

// Label = 1 iff votes >= t, for every emotion.
struct ThresholdPolicy {
  int t = 3;
};

// Per-emotion: votes {0,1} -> 0, {4,5} -> 1, {2,3} -> sample dropped.
struct ConfidencePolicy {
  Emotion emotion = Emotion::kAnger;
};

using SelectionPolicy = std::variant<ThresholdPolicy, ConfidencePolicy>;

// Multi-label dataset, one output sample per input sample. Throws
// ValidationError unless 1 <= t <= 5.
LabeledDataset ApplyThreshold(const VotedDataset& ds, int t);

// Binary dataset for `emotion`; ambiguous samples are dropped, order kept.
LabeledDataset ApplyConfidence(const VotedDataset& ds, Emotion emotion);

LabeledDataset ApplyPolicy(const VotedDataset& ds,
                           const SelectionPolicy& policy);

}  // namespace emopipe

#endif  // EMOPIPE_SELECTION_H_
