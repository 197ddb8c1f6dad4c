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

#ifndef DISCO_CORPUS_DOCUMENT_HPP_
#define DISCO_CORPUS_DOCUMENT_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace disco::corpus {

using Tokens = std::vector<std::string>;

inline constexpr int kMaxNestingLevel = 7;

struct Sentence {
  std::string raw;
  Tokens tokens;

  bool operator==(const Sentence&) const = default;
};

Sentence make_sentence(std::string raw);

using Paragraph = std::vector<Sentence>;

struct Section {
  std::string title_raw;
  Tokens title;
  int level = 1;  // table-of-contents depth, 1..7
  std::vector<Paragraph> paragraphs;

  bool operator==(const Section&) const = default;
};

struct Document {
  std::string id;
  std::string title_raw;
  Tokens title;
  std::vector<std::string> categories;  // sorted, unique
  std::vector<Section> sections;

  bool operator==(const Document&) const = default;

  std::size_t sentence_count() const;
};

// Chat-style corpus record: one conversation thread.
struct Thread {
  std::string id;
  std::vector<Sentence> utterances;

  bool operator==(const Thread&) const = default;
};

// A sentence with its position in the document, in linear reading order.
struct LocatedSentence {
  const Sentence* sentence = nullptr;
  const Section* section = nullptr;
  int sent_pos = 0;  // index within paragraph
  int para_pos = 0;  // paragraph index within the document
};

std::vector<LocatedSentence> flatten(const Document& doc);

}  // namespace disco::corpus

#endif  // DISCO_CORPUS_DOCUMENT_HPP_
