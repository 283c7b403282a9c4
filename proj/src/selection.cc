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

#include "emopipe/selection.h"

#include <string>
#include <vector>

#include "emopipe/error.h"

namespace emopipe {

LabeledDataset ApplyThreshold(const VotedDataset& ds, int t) {
  if (t < 1 || t > kMaxVotes) {
    throw ValidationError("threshold t=" + std::to_string(t) +
                          " outside [1,5]");
  }
  std::vector<LabeledSample> out;
  out.reserve(ds.size());
  for (const auto& s : ds.samples()) {
    LabeledSample l{.id = s.id, .text = s.text};
    l.labels.reserve(kNumEmotions);
    for (Emotion e : kAllEmotions) l.labels.push_back(s.vote(e) >= t ? 1 : 0);
    out.push_back(std::move(l));
  }
  return LabeledDataset::MultiLabel(std::move(out));
}

LabeledDataset ApplyConfidence(const VotedDataset& ds, Emotion emotion) {
  std::vector<LabeledSample> out;
  for (const auto& s : ds.samples()) {
    const int v = s.vote(emotion);
    if (v == 2 || v == 3) continue;
    out.push_back(LabeledSample{
        .id = s.id, .text = s.text, .labels = {static_cast<std::uint8_t>(v >= 4)}});
  }
  return LabeledDataset::Binary(emotion, std::move(out));
}

LabeledDataset ApplyPolicy(const VotedDataset& ds,
                           const SelectionPolicy& policy) {
  if (const auto* t = std::get_if<ThresholdPolicy>(&policy)) {
    return ApplyThreshold(ds, t->t);
  }
  return ApplyConfidence(ds, std::get<ConfidencePolicy>(policy).emotion);
}

}  // namespace emopipe
