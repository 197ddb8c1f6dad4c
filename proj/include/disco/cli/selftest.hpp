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

#ifndef DISCO_CLI_SELFTEST_HPP_
#define DISCO_CLI_SELFTEST_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "disco/nn/grad_check.hpp"

namespace disco::cli {

struct CheckOutcome {
  std::string name;
  bool ok = false;
  std::string detail;
};

// Finite-difference checks in double precision of each training loss on a
// desk-sized encoder (H = 32, word_dim = 32) and of the linear and
// hidden-layer probes. Passing means max relative error < tolerance.
std::vector<CheckOutcome> gradient_checks(std::uint64_t seed, double tolerance = 1e-3);

// Runs synthesis, one training epoch and a probe twice on a small fixture
// and compares the serialized outputs byte for byte.
std::vector<CheckOutcome> determinism_checks(std::uint64_t seed);

// Prints one line per check; returns true when all pass.
bool run_selftest(std::uint64_t seed, std::ostream& out);

}  // namespace disco::cli

#endif  // DISCO_CLI_SELFTEST_HPP_
