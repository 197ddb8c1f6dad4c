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

#ifndef DISCO_CORPUS_VOCAB_HPP_
#define DISCO_CORPUS_VOCAB_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "disco/common/error.hpp"
#include "disco/corpus/document.hpp"

namespace disco::corpus {

class EmptyCorpus : public ValidationError {
 public:
  EmptyCorpus() : ValidationError("corpus is empty") {}
};

class Vocab {
 public:
  static constexpr std::string_view kUnknown = "<unk>";
  static constexpr std::string_view kPadding = "<pad>";
  static constexpr int kUnknownIndex = 0;
  static constexpr int kPaddingIndex = 1;

  Vocab();
  // Rebuilds a vocab from a stored index->token list (specials first).
  explicit Vocab(std::vector<std::string> tokens);

  int index(std::string_view token) const;  // unknown index when absent
  bool contains(std::string_view token) const;
  const std::string& token(int index) const { return tokens_.at(static_cast<std::size_t>(index)); }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::vector<int> encode(const Tokens& tokens) const;

  bool operator==(const Vocab& other) const { return tokens_ == other.tokens_; }

 private:
  void add(std::string token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

// Tokens with frequency >= min_count (sentences and titles), ordered by
// descending frequency with lexicographic tie-breaking, after the specials.
Vocab build_vocab(const std::vector<Document>& docs, int min_count);

}  // namespace disco::corpus

#endif  // DISCO_CORPUS_VOCAB_HPP_
