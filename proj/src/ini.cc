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

#include "ini.h"

#include <fstream>
#include <sstream>

#include "emopipe/error.h"

namespace emopipe::ini {

namespace {

std::string Strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Document Document::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path.string());
}

Document Document::Parse(const std::string& text, const std::string& origin) {
  Document doc;
  doc.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  doc.sections_[section];
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = Strip(line);
    if (s.empty() || s[0] == ';' || s[0] == '#') continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (s.front() == '[') {
      if (s.back() != ']') throw ValidationError(where + ": malformed section header");
      section = Strip(s.substr(1, s.size() - 2));
      doc.sections_[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ValidationError(where + ": expected key = value");
    const std::string key = Strip(s.substr(0, eq));
    if (key.empty()) throw ValidationError(where + ": empty key");
    auto& sec = doc.sections_[section];
    if (sec.count(key)) throw ValidationError(where + ": duplicate key '" + key + "'");
    sec[key] = Strip(s.substr(eq + 1));
  }
  return doc;
}

std::optional<std::string> Document::Get(const std::string& section,
                                         const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return std::nullopt;
  auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

bool Document::HasSection(const std::string& section) const {
  return sections_.count(section) > 0;
}

const std::map<std::string, std::string>& Document::Section(
    const std::string& section) const {
  static const std::map<std::string, std::string> kEmpty;
  auto s = sections_.find(section);
  return s == sections_.end() ? kEmpty : s->second;
}

void Document::CheckKeys(const std::string& section,
                         const std::set<std::string>& allowed,
                         const std::set<std::string>& prefixes) const {
  for (const auto& [key, value] : Section(section)) {
    if (allowed.count(key)) continue;
    const auto dot = key.find('.');
    if (dot != std::string::npos && prefixes.count(key.substr(0, dot)) &&
        allowed.count(key.substr(dot + 1))) {
      continue;
    }
    throw ValidationError(origin_ + ": unknown key '" + key + "' in [" + section + "]");
  }
}

}  // namespace emopipe::ini
