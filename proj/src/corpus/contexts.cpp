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

#include "disco/corpus/contexts.hpp"

namespace disco::corpus {

std::vector<TrainingContext> context_windows(const Document& doc) {
  const auto flat = flatten(doc);
  std::vector<TrainingContext> out;
  if (flat.size() < 3) return out;
  out.reserve(flat.size() - 2);
  for (std::size_t i = 1; i + 1 < flat.size(); ++i) {
    const auto& cur = flat[i];
    TrainingContext ctx;
    ctx.doc_id = doc.id;
    ctx.target = *cur.sentence;
    ctx.prev = *flat[i - 1].sentence;
    ctx.next = *flat[i + 1].sentence;
    ctx.nesting_level = cur.section->level;
    ctx.sent_pos = cur.sent_pos;
    ctx.para_pos = cur.para_pos;
    ctx.section_title = cur.section->title;
    ctx.doc_title = doc.title;
    out.push_back(std::move(ctx));
  }
  return out;
}

std::vector<TrainingContext> context_windows(const std::vector<Document>& docs) {
  std::vector<TrainingContext> out;
  for (const auto& d : docs) {
    auto c = context_windows(d);
    out.insert(out.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
  }
  return out;
}

}  // namespace disco::corpus
