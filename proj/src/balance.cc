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

#include "emopipe/balance.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "emopipe/error.h"
#include "emopipe/random.h"
#include "emopipe/utf8.h"

namespace emopipe {

ClassWeights DeriveClassWeights(std::size_t count0, std::size_t count1) {
  if (count0 == 0 || count1 == 0) {
    throw ValidationError("degenerate class: counts (" + std::to_string(count0) +
                          ", " + std::to_string(count1) + ")");
  }
  const std::size_t majority = std::max(count0, count1);
  const std::size_t minority = std::min(count0, count1);
  const double ratio = static_cast<double>(std::max<std::size_t>(1, majority / minority));
  if (count0 >= count1) return {.w0 = 1.0, .w1 = ratio};
  return {.w0 = ratio, .w1 = 1.0};
}

std::vector<LabeledSample> Undersample(const std::vector<LabeledSample>& samples,
                                       std::size_t target, std::uint64_t seed) {
  if (target > samples.size()) {
    throw ValidationError("undersample target " + std::to_string(target) +
                          " exceeds " + std::to_string(samples.size()) + " samples");
  }
  // key_i = -ln(u_i) / w_i with w_i = 1 / words_i; the `target` smallest keys
  // are a weighted draw without replacement.
  Rng rng(seed);
  std::vector<double> keys(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::size_t words = utf8::Tokens(samples[i].text).size();
    if (words == 0) {
      throw ValidationError("sample '" + samples[i].id + "' has no tokens");
    }
    keys[i] = -std::log(rng.UniformOpenZero()) * static_cast<double>(words);
  }
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  order.resize(target);
  std::sort(order.begin(), order.end());

  std::vector<LabeledSample> out;
  out.reserve(target);
  for (std::size_t i : order) out.push_back(samples[i]);
  return out;
}

LabeledDataset UndersampleMajority(const LabeledDataset& ds,
                                   std::uint8_t majority_label,
                                   std::size_t target, std::uint64_t seed) {
  if (ds.mode() != LabelMode::kBinary) {
    throw ValidationError("undersampling needs a binary dataset");
  }
  std::vector<LabeledSample> majority;
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.samples()[i].label() == majority_label) {
      majority.push_back(ds.samples()[i]);
      positions.push_back(i);
    }
  }
  const auto kept = Undersample(majority, target, seed);

  // Merge back by original position.
  std::vector<bool> keep(ds.size(), true);
  for (std::size_t p : positions) keep[p] = false;
  std::size_t k = 0;
  for (std::size_t j = 0; j < majority.size() && k < kept.size(); ++j) {
    if (majority[j].id == kept[k].id) {
      keep[positions[j]] = true;
      ++k;
    }
  }
  std::vector<LabeledSample> out;
  out.reserve(ds.size() - majority.size() + kept.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (keep[i]) out.push_back(ds.samples()[i]);
  }
  return LabeledDataset::Binary(ds.target(), std::move(out));
}

}  // namespace emopipe
