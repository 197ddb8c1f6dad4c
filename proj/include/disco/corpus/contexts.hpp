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

#ifndef DISCO_CORPUS_CONTEXTS_HPP_
#define DISCO_CORPUS_CONTEXTS_HPP_

#include <string>
#include <vector>

#include "disco/corpus/document.hpp"

namespace disco::corpus {

// Everything the four training objectives need for one target sentence.
struct TrainingContext {
  std::string doc_id;
  Sentence target;
  Sentence prev;
  Sentence next;
  int nesting_level = 1;
  int sent_pos = 0;  // 0-based within paragraph
  int para_pos = 0;  // 0-based paragraph index within document
  Tokens section_title;
  Tokens doc_title;

  bool operator==(const TrainingContext&) const = default;
};

// One context per sentence that has a neighbor on both sides in the
// document's reading order. Paragraph and section boundaries may be crossed;
// document boundaries never are.
std::vector<TrainingContext> context_windows(const Document& doc);

std::vector<TrainingContext> context_windows(const std::vector<Document>& docs);

}  // namespace disco::corpus

#endif  // DISCO_CORPUS_CONTEXTS_HPP_
