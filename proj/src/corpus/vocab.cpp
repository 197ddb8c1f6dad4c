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

#include "disco/corpus/vocab.hpp"

#include <algorithm>
#include <map>

namespace disco::corpus {

Vocab::Vocab() {
  add(std::string(kUnknown));
  add(std::string(kPadding));
}

Vocab::Vocab(std::vector<std::string> tokens) {
  if (tokens.size() < 2 || tokens[0] != kUnknown || tokens[1] != kPadding)
    throw ValidationError("vocab must start with <unk>, <pad>");
  for (auto& t : tokens) {
    if (index_.count(t)) throw ValidationError("duplicate vocab token: " + t);
    add(std::move(t));
  }
}

void Vocab::add(std::string token) {
  index_.emplace(token, static_cast<int>(tokens_.size()));
  tokens_.push_back(std::move(token));
}

int Vocab::index(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnknownIndex : it->second;
}

bool Vocab::contains(std::string_view token) const { return index_.count(std::string(token)) != 0; }

std::vector<int> Vocab::encode(const Tokens& tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(index(t));
  return ids;
}

Vocab build_vocab(const std::vector<Document>& docs, int min_count) {
  if (min_count < 1) throw ValidationError("min_count must be >= 1");
  if (docs.empty()) throw EmptyCorpus();

  std::map<std::string, long> counts;
  auto count = [&](const Tokens& toks) {
    for (const auto& t : toks) ++counts[t];
  };
  for (const auto& doc : docs) {
    count(doc.title);
    for (const auto& sec : doc.sections) {
      count(sec.title);
      for (const auto& para : sec.paragraphs)
        for (const auto& s : para) count(s.tokens);
    }
  }

  std::vector<std::pair<std::string, long>> kept;
  for (auto& [tok, n] : counts)
    if (n >= min_count && tok != Vocab::kUnknown && tok != Vocab::kPadding) kept.emplace_back(tok, n);
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

  std::vector<std::string> tokens{std::string(Vocab::kUnknown), std::string(Vocab::kPadding)};
  for (auto& [tok, n] : kept) tokens.push_back(tok);
  return Vocab(std::move(tokens));
}

}  // namespace disco::corpus
