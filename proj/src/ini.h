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

#ifndef EMOPIPE_SRC_INI_H_
#define EMOPIPE_SRC_INI_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace emopipe::ini {

// `[section]` headers and `key = value` lines; `;` or `#` at line start
// begins a comment. Keys before any header belong to section "".
class Document {
 public:
  static Document Load(const std::filesystem::path& path);
  static Document Parse(const std::string& text, const std::string& origin);

  std::optional<std::string> Get(const std::string& section,
                                 const std::string& key) const;
  bool HasSection(const std::string& section) const;
  const std::map<std::string, std::string>& Section(const std::string& section) const;

  // Throws ValidationError naming the first key of `section` not in
  // `allowed` (keys matching an allowed prefix followed by '.' also pass).
  void CheckKeys(const std::string& section, const std::set<std::string>& allowed,
                 const std::set<std::string>& prefixes = {}) const;

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace emopipe::ini

#endif  // EMOPIPE_SRC_INI_H_
