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

#include "emopipe/emotion.h"

#include <string>

#include "emopipe/error.h"

namespace emopipe {

std::string_view EmotionName(Emotion e) {
  switch (e) {
    case Emotion::kAnger:
      return "anger";
    case Emotion::kFear:
      return "fear";
    case Emotion::kHappiness:
      return "happiness";
    case Emotion::kHatred:
      return "hatred";
    case Emotion::kSadness:
      return "sadness";
    case Emotion::kWonder:
      return "wonder";
  }
  return "unknown";
}

std::optional<Emotion> ParseEmotion(std::string_view name) {
  for (Emotion e : kAllEmotions) {
    if (EmotionName(e) == name) return e;
  }
  return std::nullopt;
}

Emotion EmotionFromName(std::string_view name) {
  if (auto e = ParseEmotion(name)) return *e;
  throw ValidationError("unknown emotion '" + std::string(name) + "'");
}

}  // namespace emopipe
