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

#ifndef EMOPIPE_UTF8_H_
#define EMOPIPE_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace emopipe::utf8 {

// Decodes UTF-8; invalid bytes decode to U+FFFD one byte at a time.
std::u32string Decode(std::string_view s);
std::string Encode(std::u32string_view s);
void Append(std::string& out, char32_t cp);

// Unicode White_Space property (ASCII and the common general-category Zs
// members plus line/paragraph separators).
bool IsSpace(char32_t cp);

// Whitespace-delimited tokens of `text` (Unicode aware).
std::vector<std::string> Tokens(std::string_view text);

// Trims Unicode whitespace on both ends.
std::string Trim(std::string_view text);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace emopipe::utf8

#endif  // EMOPIPE_UTF8_H_
