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

#ifndef EMOPIPE_SRC_CSV_H_
#define EMOPIPE_SRC_CSV_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace emopipe::csv {

struct Record {
  // 1-based physical line the record starts on.
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields may contain commas, quotes ("") and line
// breaks. CRLF and LF are both accepted. Throws ValidationError on an
// unterminated quote or stray quote inside an unquoted field.
std::vector<Record> ReadAll(std::istream& in);

void WriteRecord(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace emopipe::csv

#endif  // EMOPIPE_SRC_CSV_H_
