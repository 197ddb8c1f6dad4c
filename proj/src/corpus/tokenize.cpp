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

#include "disco/corpus/tokenize.hpp"

#include <cctype>

namespace disco::corpus {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

char lower(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 ? static_cast<char>(std::tolower(u)) : c;
}

void emit_word(std::string_view word, std::vector<std::string>& out) {
  std::size_t b = 0;
  std::size_t e = word.size();
  while (b < e && is_punct(word[b])) out.emplace_back(1, word[b++]);
  std::size_t tail = e;
  while (tail > b && is_punct(word[tail - 1])) --tail;
  if (tail > b) {
    std::string core;
    core.reserve(tail - b);
    for (std::size_t i = b; i < tail; ++i) core.push_back(lower(word[i]));
    out.push_back(std::move(core));
  }
  for (std::size_t i = tail; i < e; ++i) out.emplace_back(1, word[i]);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && is_space(raw[i])) ++i;
    const std::size_t start = i;
    while (i < raw.size() && !is_space(raw[i])) ++i;
    if (i > start) emit_word(raw.substr(start, i - start), out);
  }
  return out;
}

}  // namespace disco::corpus
