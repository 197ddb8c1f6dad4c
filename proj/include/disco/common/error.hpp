// Copyright 2026 The discoprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DISCO_COMMON_ERROR_HPP_
#define DISCO_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace disco {

// Bad input: malformed files, invalid configuration, violated preconditions
// on user-supplied data. The CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failures that happen while doing valid work (I/O, numerical blowups,
// datasets that cannot be satisfied). The CLI maps these to exit code 2.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace disco

#endif  // DISCO_COMMON_ERROR_HPP_
