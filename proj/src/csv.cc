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

#include "csv.h"

#include <iterator>

#include "emopipe/error.h"

namespace emopipe::csv {

std::vector<Record> ReadAll(std::istream& in) {
  const std::string data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  std::vector<Record> records;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = data.size();

  while (i < n) {
    Record rec;
    rec.line = line;
    std::string field;
    bool end_of_record = false;
    while (!end_of_record) {
      field.clear();
      if (i < n && data[i] == '"') {
        ++i;
        bool closed = false;
        while (i < n) {
          const char c = data[i];
          if (c == '"') {
            if (i + 1 < n && data[i + 1] == '"') {
              field.push_back('"');
              i += 2;
            } else {
              ++i;
              closed = true;
              break;
            }
          } else {
            if (c == '\n') ++line;
            field.push_back(c);
            ++i;
          }
        }
        if (!closed) {
          throw ValidationError("line " + std::to_string(rec.line) +
                                ": unterminated quoted field");
        }
        if (i < n && data[i] != ',' && data[i] != '\n' && data[i] != '\r') {
          throw ValidationError("line " + std::to_string(line) +
                                ": unexpected character after closing quote");
        }
      } else {
        while (i < n && data[i] != ',' && data[i] != '\n' && data[i] != '\r') {
          if (data[i] == '"') {
            throw ValidationError("line " + std::to_string(line) +
                                  ": quote inside unquoted field");
          }
          field.push_back(data[i]);
          ++i;
        }
      }
      rec.fields.push_back(field);
      if (i >= n) {
        end_of_record = true;
      } else if (data[i] == ',') {
        ++i;
      } else {
        if (data[i] == '\r') ++i;
        if (i < n && data[i] == '\n') ++i;
        ++line;
        end_of_record = true;
      }
    }
    // A bare line break yields one empty field; skip blank lines.
    if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
    records.push_back(std::move(rec));
  }
  return records;
}

namespace {

bool NeedsQuotes(std::string_view f) {
  if (f.empty()) return false;
  return f.find_first_of(",\"\r\n") != std::string_view::npos ||
         f.front() == ' ' || f.back() == ' ';
}

}  // namespace

void WriteRecord(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out << ',';
    const std::string& f = fields[k];
    if (!NeedsQuotes(f)) {
      out << f;
      continue;
    }
    out << '"';
    for (char c : f) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"';
  }
  out << "\r\n";
}

}  // namespace emopipe::csv
