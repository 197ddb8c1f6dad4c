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

#include "disco/corpus/word_vectors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "disco/common/rng.hpp"

namespace disco::corpus {

WordVectors random_word_vectors(const Vocab& vocab, int dim, std::uint64_t seed) {
  if (dim <= 0) throw ValidationError("word vector dim must be positive");
  WordVectors wv;
  wv.table.resize(static_cast<Eigen::Index>(vocab.size()), dim);
  Rng rng = derive_rng(seed, "word-vectors");
  nn::init_uniform(wv.table, -kOovInitBound, kOovInitBound, rng);
  wv.table.row(Vocab::kPaddingIndex).setZero();
  return wv;
}

namespace {

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_float(std::string_view s, float& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_integer(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

WordVectors load_word_vectors(const std::filesystem::path& path, const Vocab& vocab, int dim, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw RuntimeError("unreadable word-vector file: " + path.string());
  WordVectors wv = random_word_vectors(vocab, dim, seed);
  std::vector<bool> seen(vocab.size(), false);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = fields(line);
    if (f.empty()) continue;
    if (line_no == 1 && f.size() == 2 && is_integer(f[0]) && is_integer(f[1])) continue;
    const int found = static_cast<int>(f.size()) - 1;
    if (found != dim) throw VectorDimMismatch(dim, found, line_no);
    if (!vocab.contains(f[0])) continue;
    const int row = vocab.index(f[0]);
    if (seen[static_cast<std::size_t>(row)]) continue;  // first occurrence wins
    for (int j = 0; j < dim; ++j) {
      float v = 0;
      if (!parse_float(f[static_cast<std::size_t>(j) + 1], v))
        throw ValidationError("bad float at line " + std::to_string(line_no) + " in " + path.string());
      wv.table(row, j) = v;
    }
    seen[static_cast<std::size_t>(row)] = true;
    ++wv.coverage;
  }
  return wv;
}

}  // namespace disco::corpus
