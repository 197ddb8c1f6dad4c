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

#ifndef DISCO_CORPUS_WORD_VECTORS_HPP_
#define DISCO_CORPUS_WORD_VECTORS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "disco/common/error.hpp"
#include "disco/corpus/vocab.hpp"
#include "disco/nn/tensor.hpp"

namespace disco::corpus {

class VectorDimMismatch : public ValidationError {
 public:
  VectorDimMismatch(int expected, int found, std::size_t line)
      : ValidationError("word vector dimension mismatch at line " + std::to_string(line) + ": expected " +
                        std::to_string(expected) + ", found " + std::to_string(found)),
        expected_(expected),
        found_(found) {}
  int expected() const { return expected_; }
  int found() const { return found_; }

 private:
  int expected_;
  int found_;
};

struct WordVectors {
  nn::Matrix<float> table;  // vocab.size() x dim
  std::size_t coverage = 0;  // vocab tokens found in the file
};

inline constexpr double kOovInitBound = 0.05;

// Rows with no entry in the file are uniform in [-0.05, 0.05] (seeded);
// the padding row is zero.
WordVectors random_word_vectors(const Vocab& vocab, int dim, std::uint64_t seed);

// Reads whitespace-separated "token v1 ... vd" lines. A word2vec-style
// "<count> <dim>" first line is skipped.
WordVectors load_word_vectors(const std::filesystem::path& path, const Vocab& vocab, int dim, std::uint64_t seed);

}  // namespace disco::corpus

#endif  // DISCO_CORPUS_WORD_VECTORS_HPP_
