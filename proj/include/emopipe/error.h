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

#ifndef EMOPIPE_ERROR_H_
#define EMOPIPE_ERROR_H_

#include <stdexcept>
#include <string>

namespace emopipe {

// Input violates a documented contract (bad row, out-of-range vote, bad
// flag). The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Environment or numerical failure while running a valid request (I/O,
// divergence). The CLI maps this to exit code 2.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace emopipe

#endif  // EMOPIPE_ERROR_H_
