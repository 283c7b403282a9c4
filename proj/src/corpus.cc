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

#include "emopipe/corpus.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "csv.h"
#include "emopipe/error.h"
#include "emopipe/random.h"
#include "emopipe/utf8.h"
#include "json.hpp"

namespace emopipe {

using nlohmann::json;
using nlohmann::ordered_json;

FileFormat ParseFileFormat(std::string_view name) {
  if (name == "jsonl") return FileFormat::kJsonl;
  if (name == "csv") return FileFormat::kCsv;
  throw ValidationError("unknown format '" + std::string(name) +
                        "' (expected jsonl or csv)");
}

namespace {

std::string OriginName(Origin o) {
  return o == Origin::kAugmented ? "augmented" : "original";
}

[[noreturn]] void FieldError(std::size_t line, std::string_view field,
                             const std::string& what) {
  throw ValidationError("line " + std::to_string(line) + ", field '" +
                        std::string(field) + "': " + what);
}

void CheckVotedSample(const VotedSample& s) {
  if (s.id.empty()) throw ValidationError("empty id");
  if (utf8::Trim(s.text).empty()) {
    throw ValidationError("sample '" + s.id + "': empty text");
  }
  for (Emotion e : kAllEmotions) {
    const int v = s.vote(e);
    if (v < 0 || v > kMaxVotes) {
      throw ValidationError("sample '" + s.id + "', " +
                            std::string(EmotionName(e)) + ": vote out of range (" +
                            std::to_string(v) + " not in [0,5])");
    }
  }
}

void CheckLabeledSample(const LabeledSample& s, std::size_t heads) {
  if (s.id.empty()) throw ValidationError("empty id");
  if (s.labels.size() != heads) {
    throw ValidationError("sample '" + s.id + "': expected " +
                          std::to_string(heads) + " label(s), got " +
                          std::to_string(s.labels.size()));
  }
  for (std::uint8_t l : s.labels) {
    if (l > 1) throw ValidationError("sample '" + s.id + "': label not 0/1");
  }
  if (s.origin == Origin::kAugmented && s.parent_id.empty()) {
    throw ValidationError("sample '" + s.id +
                          "': augmented sample without parent id");
  }
  if (s.origin == Origin::kOriginal && !s.parent_id.empty()) {
    throw ValidationError("sample '" + s.id +
                          "': original sample must not carry a parent id");
  }
}

template <typename Samples>
void CheckUniqueIds(const Samples& samples) {
  std::unordered_set<std::string> seen;
  seen.reserve(samples.size());
  for (const auto& s : samples) {
    if (!seen.insert(s.id).second) {
      throw ValidationError("duplicate id '" + s.id + "'");
    }
  }
}

int ParseInt(std::string_view text, std::size_t line, std::string_view field) {
  int value = 0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    FieldError(line, field, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::ifstream OpenIn(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeError("cannot open '" + path.string() + "' for writing");
  return out;
}

void CloseOut(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw RuntimeError("error writing '" + path.string() + "'");
}

// JSONL line iteration with 1-based line numbers; blank lines skipped.
template <typename Fn>
void ForEachJsonLine(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError("line " + std::to_string(lineno) +
                            ": malformed JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) {
      throw ValidationError("line " + std::to_string(lineno) +
                            ": expected a JSON object");
    }
    fn(obj, lineno);
  }
}

std::string JsonString(const json& obj, std::string_view key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) FieldError(line, key, "missing");
  if (!it->is_string()) FieldError(line, key, "expected a string");
  return it->get<std::string>();
}

int JsonInt(const json& obj, std::string_view key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) FieldError(line, key, "missing");
  if (!it->is_number_integer()) FieldError(line, key, "expected an integer");
  const auto v = it->get<std::int64_t>();
  if (v < INT32_MIN || v > INT32_MAX) FieldError(line, key, "integer overflow");
  return static_cast<int>(v);
}

std::uint8_t CheckLabel(int v, std::size_t line, std::string_view field) {
  if (v != 0 && v != 1) FieldError(line, field, "label must be 0 or 1");
  return static_cast<std::uint8_t>(v);
}

Origin ParseOrigin(std::string_view s, std::size_t line) {
  if (s == "original") return Origin::kOriginal;
  if (s == "augmented") return Origin::kAugmented;
  FieldError(line, "origin", "expected 'original' or 'augmented'");
}

void CheckVote(int v, std::size_t line, std::string_view field) {
  if (v < 0 || v > kMaxVotes) {
    FieldError(line, field, "vote out of range (" + std::to_string(v) +
                                " not in [0,5])");
  }
}

// Adds `id` to `seen`, raising a line-numbered error on duplicates.
void NoteId(std::unordered_set<std::string>& seen, const std::string& id,
            std::size_t line) {
  if (id.empty()) FieldError(line, "id", "empty id");
  if (!seen.insert(id).second) {
    FieldError(line, "id", "duplicate id '" + id + "'");
  }
}

std::vector<std::string> VotedHeader() {
  std::vector<std::string> h{"id", "text"};
  for (Emotion e : kAllEmotions) h.emplace_back(EmotionName(e));
  return h;
}

std::vector<std::string> LabeledHeader(LabelMode mode) {
  std::vector<std::string> h{"id", "text"};
  if (mode == LabelMode::kBinary) {
    h.insert(h.end(), {"emotion", "label"});
  } else {
    for (Emotion e : kAllEmotions) h.emplace_back(EmotionName(e));
  }
  h.insert(h.end(), {"origin", "parent"});
  return h;
}

// Column name -> index, requiring every name in `required`.
std::unordered_map<std::string, std::size_t> HeaderIndex(
    const csv::Record& header, const std::vector<std::string>& required) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < header.fields.size(); ++k) {
    index.emplace(header.fields[k], k);
  }
  for (const auto& name : required) {
    if (!index.count(name)) FieldError(header.line, name, "missing column");
  }
  return index;
}

const std::string& Cell(const csv::Record& rec,
                        const std::unordered_map<std::string, std::size_t>& idx,
                        const std::string& name) {
  const std::size_t k = idx.at(name);
  if (k >= rec.fields.size()) FieldError(rec.line, name, "missing value");
  return rec.fields[k];
}

}  // namespace

VotedDataset::VotedDataset(std::vector<VotedSample> samples)
    : samples_(std::move(samples)) {
  for (const auto& s : samples_) CheckVotedSample(s);
  CheckUniqueIds(samples_);
}

LabeledDataset::LabeledDataset(LabelMode mode, Emotion target,
                               std::vector<LabeledSample> samples)
    : mode_(mode), target_(target), samples_(std::move(samples)) {
  for (const auto& s : samples_) CheckLabeledSample(s, heads());
  CheckUniqueIds(samples_);
}

LabeledDataset LabeledDataset::Binary(Emotion target,
                                      std::vector<LabeledSample> s) {
  return LabeledDataset(LabelMode::kBinary, target, std::move(s));
}

LabeledDataset LabeledDataset::MultiLabel(std::vector<LabeledSample> s) {
  return LabeledDataset(LabelMode::kMultiLabel, Emotion::kAnger, std::move(s));
}

std::size_t LabeledDataset::heads() const {
  return mode_ == LabelMode::kBinary ? 1 : kNumEmotions;
}

std::size_t LabeledDataset::CountLabel(std::size_t head,
                                       std::uint8_t value) const {
  return static_cast<std::size_t>(
      std::count_if(samples_.begin(), samples_.end(),
                    [&](const LabeledSample& s) { return s.labels.at(head) == value; }));
}

VotedDataset LoadVoted(const std::filesystem::path& path, FileFormat format) {
  std::ifstream in = OpenIn(path);
  std::vector<VotedSample> samples;
  std::unordered_set<std::string> seen;

  if (format == FileFormat::kJsonl) {
    ForEachJsonLine(in, [&](const json& obj, std::size_t line) {
      VotedSample s;
      s.id = JsonString(obj, "id", line);
      s.text = JsonString(obj, "text", line);
      for (Emotion e : kAllEmotions) {
        const int v = JsonInt(obj, EmotionName(e), line);
        CheckVote(v, line, EmotionName(e));
        s.votes[Index(e)] = v;
      }
      if (utf8::Trim(s.text).empty()) FieldError(line, "text", "empty text");
      NoteId(seen, s.id, line);
      samples.push_back(std::move(s));
    });
  } else {
    const auto records = csv::ReadAll(in);
    if (records.empty()) throw ValidationError("line 1: missing CSV header");
    const auto idx = HeaderIndex(records[0], VotedHeader());
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& rec = records[r];
      VotedSample s;
      s.id = Cell(rec, idx, "id");
      s.text = Cell(rec, idx, "text");
      for (Emotion e : kAllEmotions) {
        const std::string name(EmotionName(e));
        const int v = ParseInt(Cell(rec, idx, name), rec.line, name);
        CheckVote(v, rec.line, name);
        s.votes[Index(e)] = v;
      }
      if (utf8::Trim(s.text).empty()) FieldError(rec.line, "text", "empty text");
      NoteId(seen, s.id, rec.line);
      samples.push_back(std::move(s));
    }
  }
  return VotedDataset(std::move(samples));
}

void WriteVoted(const VotedDataset& ds, const std::filesystem::path& path,
                FileFormat format) {
  std::ofstream out = OpenOut(path);
  if (format == FileFormat::kJsonl) {
    for (const auto& s : ds.samples()) {
      ordered_json obj;
      obj["id"] = s.id;
      obj["text"] = s.text;
      for (Emotion e : kAllEmotions) obj[std::string(EmotionName(e))] = s.vote(e);
      out << obj.dump() << '\n';
    }
  } else {
    csv::WriteRecord(out, VotedHeader());
    for (const auto& s : ds.samples()) {
      std::vector<std::string> row{s.id, s.text};
      for (Emotion e : kAllEmotions) row.push_back(std::to_string(s.vote(e)));
      csv::WriteRecord(out, row);
    }
  }
  CloseOut(out, path);
}

LabeledDataset LoadLabeled(const std::filesystem::path& path, FileFormat format,
                           LabelMode empty_mode) {
  std::ifstream in = OpenIn(path);
  std::vector<LabeledSample> samples;
  std::unordered_set<std::string> seen;
  std::optional<LabelMode> mode;
  std::optional<Emotion> target;

  auto set_mode = [&](LabelMode m, std::size_t line) {
    if (mode && *mode != m) {
      throw ValidationError("line " + std::to_string(line) +
                            ": mixed binary and multi-label rows");
    }
    mode = m;
  };
  auto set_target = [&](Emotion e, std::size_t line) {
    if (target && *target != e) {
      FieldError(line, "emotion", "binary dataset must carry a single emotion");
    }
    target = e;
  };
  auto finish_sample = [&](LabeledSample s, std::size_t line) {
    if (s.origin == Origin::kAugmented && s.parent_id.empty()) {
      FieldError(line, "parent", "augmented sample without parent id");
    }
    if (s.origin == Origin::kOriginal && !s.parent_id.empty()) {
      FieldError(line, "parent", "original sample must not carry a parent id");
    }
    NoteId(seen, s.id, line);
    samples.push_back(std::move(s));
  };

  if (format == FileFormat::kJsonl) {
    ForEachJsonLine(in, [&](const json& obj, std::size_t line) {
      LabeledSample s;
      s.id = JsonString(obj, "id", line);
      s.text = JsonString(obj, "text", line);
      if (obj.contains("emotion")) {
        set_mode(LabelMode::kBinary, line);
        const std::string name = JsonString(obj, "emotion", line);
        auto e = ParseEmotion(name);
        if (!e) FieldError(line, "emotion", "unknown emotion '" + name + "'");
        set_target(*e, line);
        s.labels = {CheckLabel(JsonInt(obj, "label", line), line, "label")};
      } else {
        set_mode(LabelMode::kMultiLabel, line);
        for (Emotion e : kAllEmotions) {
          s.labels.push_back(
              CheckLabel(JsonInt(obj, EmotionName(e), line), line, EmotionName(e)));
        }
      }
      s.origin = obj.contains("origin")
                     ? ParseOrigin(JsonString(obj, "origin", line), line)
                     : Origin::kOriginal;
      if (obj.contains("parent")) s.parent_id = JsonString(obj, "parent", line);
      finish_sample(std::move(s), line);
    });
  } else {
    const auto records = csv::ReadAll(in);
    if (records.empty()) throw ValidationError("line 1: missing CSV header");
    const auto& header = records[0];
    const bool binary = std::find(header.fields.begin(), header.fields.end(),
                                  "emotion") != header.fields.end();
    mode = binary ? LabelMode::kBinary : LabelMode::kMultiLabel;
    std::vector<std::string> required{"id", "text"};
    if (binary) {
      required.insert(required.end(), {"emotion", "label"});
    } else {
      for (Emotion e : kAllEmotions) required.emplace_back(EmotionName(e));
    }
    const auto idx = HeaderIndex(header, required);
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& rec = records[r];
      LabeledSample s;
      s.id = Cell(rec, idx, "id");
      s.text = Cell(rec, idx, "text");
      if (binary) {
        const std::string& name = Cell(rec, idx, "emotion");
        auto e = ParseEmotion(name);
        if (!e) FieldError(rec.line, "emotion", "unknown emotion '" + name + "'");
        set_target(*e, rec.line);
        s.labels = {CheckLabel(ParseInt(Cell(rec, idx, "label"), rec.line, "label"),
                               rec.line, "label")};
      } else {
        for (Emotion e : kAllEmotions) {
          const std::string name(EmotionName(e));
          s.labels.push_back(CheckLabel(
              ParseInt(Cell(rec, idx, name), rec.line, name), rec.line, name));
        }
      }
      s.origin = idx.count("origin")
                     ? ParseOrigin(Cell(rec, idx, "origin"), rec.line)
                     : Origin::kOriginal;
      if (idx.count("parent")) s.parent_id = Cell(rec, idx, "parent");
      finish_sample(std::move(s), rec.line);
    }
  }

  const LabelMode m = mode.value_or(empty_mode);
  if (m == LabelMode::kBinary) {
    return LabeledDataset::Binary(target.value_or(Emotion::kAnger),
                                  std::move(samples));
  }
  return LabeledDataset::MultiLabel(std::move(samples));
}

void WriteLabeled(const LabeledDataset& ds, const std::filesystem::path& path,
                  FileFormat format) {
  std::ofstream out = OpenOut(path);
  const bool binary = ds.mode() == LabelMode::kBinary;
  if (format == FileFormat::kJsonl) {
    for (const auto& s : ds.samples()) {
      ordered_json obj;
      obj["id"] = s.id;
      obj["text"] = s.text;
      if (binary) {
        obj["emotion"] = EmotionName(ds.target());
        obj["label"] = s.label();
      } else {
        for (Emotion e : kAllEmotions) {
          obj[std::string(EmotionName(e))] = s.labels[Index(e)];
        }
      }
      obj["origin"] = OriginName(s.origin);
      if (s.origin == Origin::kAugmented) obj["parent"] = s.parent_id;
      out << obj.dump() << '\n';
    }
  } else {
    csv::WriteRecord(out, LabeledHeader(ds.mode()));
    for (const auto& s : ds.samples()) {
      std::vector<std::string> row{s.id, s.text};
      if (binary) {
        row.emplace_back(EmotionName(ds.target()));
        row.push_back(std::to_string(s.label()));
      } else {
        for (std::uint8_t l : s.labels) row.push_back(std::to_string(l));
      }
      row.push_back(OriginName(s.origin));
      row.push_back(s.parent_id);
      csv::WriteRecord(out, row);
    }
  }
  CloseOut(out, path);
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> SplitIndices(
    std::size_t n, double eval_fraction, std::uint64_t seed) {
  if (n < 2) throw ValidationError("split needs at least 2 samples");
  if (!(eval_fraction > 0.0 && eval_fraction < 1.0)) {
    throw ValidationError("eval fraction must lie in (0, 1)");
  }
  const auto n_eval =
      static_cast<std::size_t>(std::llround(eval_fraction * static_cast<double>(n)));
  if (n_eval == 0 || n_eval == n) {
    throw ValidationError("eval fraction " + std::to_string(eval_fraction) +
                          " leaves an empty train or eval split for " +
                          std::to_string(n) + " samples");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.Below(i + 1)]);
  }
  std::vector<std::size_t> eval(perm.begin(), perm.begin() + n_eval);
  std::vector<std::size_t> train(perm.begin() + n_eval, perm.end());
  std::sort(eval.begin(), eval.end());
  std::sort(train.begin(), train.end());
  return {std::move(train), std::move(eval)};
}

namespace {

template <typename Sample>
std::vector<Sample> Pick(const std::vector<Sample>& all,
                         const std::vector<std::size_t>& idx) {
  std::vector<Sample> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

}  // namespace

Split<VotedDataset> SplitDataset(const VotedDataset& ds, double eval_fraction,
                                 std::uint64_t seed) {
  auto [train, eval] = SplitIndices(ds.size(), eval_fraction, seed);
  return {VotedDataset(Pick(ds.samples(), train)),
          VotedDataset(Pick(ds.samples(), eval))};
}

Split<LabeledDataset> SplitDataset(const LabeledDataset& ds,
                                   double eval_fraction, std::uint64_t seed) {
  auto [train, eval] = SplitIndices(ds.size(), eval_fraction, seed);
  auto rebuild = [&](std::vector<LabeledSample> s) {
    return ds.mode() == LabelMode::kBinary
               ? LabeledDataset::Binary(ds.target(), std::move(s))
               : LabeledDataset::MultiLabel(std::move(s));
  };
  return {rebuild(Pick(ds.samples(), train)), rebuild(Pick(ds.samples(), eval))};
}

}  // namespace emopipe
