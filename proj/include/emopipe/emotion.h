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

#ifndef EMOPIPE_EMOTION_H_
#define EMOPIPE_EMOTION_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace emopipe {

// Ekman's six basic emotions. The enumerator order is the canonical
// iteration order everywhere (files, heads, reports).
enum class Emotion : int {
  kAnger = 0,
  kFear = 1,
  kHappiness = 2,
  kHatred = 3,
  kSadness = 4,
  kWonder = 5,
};

inline constexpr std::size_t kNumEmotions = 6;

inline constexpr std::array<Emotion, kNumEmotions> kAllEmotions = {
    Emotion::kAnger,  Emotion::kFear,    Emotion::kHappiness,
    Emotion::kHatred, Emotion::kSadness, Emotion::kWonder};

constexpr std::size_t Index(Emotion e) { return static_cast<std::size_t>(e); }

// Lowercase English name, also used as the vote/label column name.
std::string_view EmotionName(Emotion e);

std::optional<Emotion> ParseEmotion(std::string_view name);

// Like ParseEmotion but throws ValidationError on unknown names.
Emotion EmotionFromName(std::string_view name);

}  // namespace emopipe

#endif  // EMOPIPE_EMOTION_H_
