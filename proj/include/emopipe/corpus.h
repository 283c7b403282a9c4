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

#ifndef EMOPIPE_CORPUS_H_
#define EMOPIPE_CORPUS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emopipe/emotion.h"

namespace emopipe {

enum class FileFormat { kJsonl, kCsv };

FileFormat ParseFileFormat(std::string_view name);

inline constexpr int kMaxVotes = 5;

using VoteCounts = std::array<int, kNumEmotions>;

// A raw tweet with per-emotion annotator vote counts in [0, 5].
struct VotedSample {
  std::string id;
  std::string text;
  VoteCounts votes{};

  int vote(Emotion e) const { return votes[Index(e)]; }
  friend bool operator==(const VotedSample&, const VotedSample&) = default;
};

enum class Origin { kOriginal, kAugmented };

// A labeled training unit. In binary mode `labels` holds a single entry for
// the dataset's target emotion; in multi-label mode it holds one entry per
// emotion in canonical order.
struct LabeledSample {
  std::string id;
  std::string text;
  std::vector<std::uint8_t> labels;
  Origin origin = Origin::kOriginal;
  // Set iff origin == kAugmented.
  std::string parent_id;

  std::uint8_t label() const { return labels.at(0); }
  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

// Ordered, id-unique collection of voted samples.
class VotedDataset {
 public:
  VotedDataset() = default;
  // Throws ValidationError on duplicate ids, out-of-range votes or blank text.
  explicit VotedDataset(std::vector<VotedSample> samples);

  const std::vector<VotedSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  friend bool operator==(const VotedDataset&, const VotedDataset&) = default;

 private:
  std::vector<VotedSample> samples_;
};

enum class LabelMode { kBinary, kMultiLabel };

// Ordered, id-unique collection of labeled samples, homogeneous in mode.
class LabeledDataset {
 public:
  static LabeledDataset Binary(Emotion target, std::vector<LabeledSample> s);
  static LabeledDataset MultiLabel(std::vector<LabeledSample> s);

  LabelMode mode() const { return mode_; }
  // Meaningful only in binary mode.
  Emotion target() const { return target_; }
  // 1 in binary mode, 6 in multi-label mode.
  std::size_t heads() const;

  const std::vector<LabeledSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  // Count of samples whose label in `head` equals `value`.
  std::size_t CountLabel(std::size_t head, std::uint8_t value) const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;

 private:
  LabeledDataset(LabelMode mode, Emotion target,
                 std::vector<LabeledSample> samples);

  LabelMode mode_ = LabelMode::kMultiLabel;
  Emotion target_ = Emotion::kAnger;
  std::vector<LabeledSample> samples_;
};

VotedDataset LoadVoted(const std::filesystem::path& path, FileFormat format);
void WriteVoted(const VotedDataset& ds, const std::filesystem::path& path,
                FileFormat format);

// Mode is inferred from the file: an `emotion` field/column means binary.
// An empty file yields `empty_mode` (binary datasets default to anger).
LabeledDataset LoadLabeled(const std::filesystem::path& path,
                           FileFormat format,
                           LabelMode empty_mode = LabelMode::kMultiLabel);
void WriteLabeled(const LabeledDataset& ds, const std::filesystem::path& path,
                  FileFormat format);

template <typename Dataset>
struct Split {
  Dataset train;
  Dataset eval;
};

// Seeded random partition; |eval| = round(eval_fraction * N). Both parts
// keep the input's relative order.
Split<VotedDataset> SplitDataset(const VotedDataset& ds, double eval_fraction,
                                 std::uint64_t seed);
Split<LabeledDataset> SplitDataset(const LabeledDataset& ds,
                                   double eval_fraction, std::uint64_t seed);

// Index sets behind SplitDataset, exposed for callers that split parallel
// arrays.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> SplitIndices(
    std::size_t n, double eval_fraction, std::uint64_t seed);

}  // namespace emopipe

#endif  // EMOPIPE_CORPUS_H_
