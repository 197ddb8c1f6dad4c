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

#include "disco/eval/embedding_source.hpp"

#include <charconv>
#include <cstdio>

#include "disco/common/io.hpp"

namespace disco::eval {

void EmbeddingCache::put(const std::string& instance_id, std::size_t slot, Vector<float> v) {
  if (v.size() != dim_) throw nn::DimMismatch("cache row for " + instance_id + " has " + std::to_string(v.size()) +
                                              " values, expected " + std::to_string(dim_));
  auto& row = by_id_[instance_id];
  if (row.size() <= slot) row.resize(slot + 1);
  if (row[slot].size() == 0) ++rows_;
  row[slot] = std::move(v);
}

Bundle EmbeddingCache::slots(const synth::TaskInstance& inst) {
  const auto it = by_id_.find(inst.instance_id);
  if (it == by_id_.end() || it->second.size() < inst.sentences.size()) throw MissingEmbedding(inst.instance_id);
  Bundle out(it->second.begin(), it->second.begin() + static_cast<long>(inst.sentences.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() == 0) throw MissingEmbedding(inst.instance_id + " slot " + std::to_string(i));
  return out;
}

namespace {

float parse_float(std::string_view s, std::size_t line) {
  float v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ValidationError("embedding cache line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

EmbeddingCache parse_cache(std::string_view text) {
  auto lines = split(text, '\n');
  if (lines.empty() || lines[0].rfind("#dim ", 0) != 0) throw ValidationError("embedding cache must start with '#dim d'");
  long dim = 0;
  const std::string_view d = trim(std::string_view(lines[0]).substr(5));
  const auto [ptr, ec] = std::from_chars(d.data(), d.data() + d.size(), dim);
  if (ec != std::errc() || ptr != d.data() + d.size() || dim <= 0) throw ValidationError("bad '#dim' header");
  EmbeddingCache cache(dim);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 3) throw ValidationError("embedding cache line " + std::to_string(i + 1) + ": expected 3 columns");
    std::size_t slot = 0;
    const auto [p2, e2] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), slot);
    if (e2 != std::errc() || p2 != cols[1].data() + cols[1].size())
      throw ValidationError("embedding cache line " + std::to_string(i + 1) + ": bad slot");
    std::vector<float> vals;
    for (const auto& tok : split(cols[2], ' '))
      if (!tok.empty()) vals.push_back(parse_float(tok, i + 1));
    if (static_cast<long>(vals.size()) != dim)
      throw nn::DimMismatch("embedding cache line " + std::to_string(i + 1) + " has " + std::to_string(vals.size()) +
                            " values, header says " + std::to_string(dim));
    cache.put(cols[0], slot, Eigen::Map<Vector<float>>(vals.data(), dim));
  }
  return cache;
}

EmbeddingCache read_cache(const std::filesystem::path& path) { return parse_cache(read_file(path)); }

Vector<float> EncoderSource::encode(const corpus::Sentence& s) {
  const auto it = memo_.find(s.raw);
  if (it != memo_.end()) return it->second;
  auto ids = ckpt_.vocab.encode(s.tokens);
  if (ids.empty()) ids.push_back(corpus::Vocab::kUnknownIndex);
  Vector<float> v = nn::bigru_encode(ids, ckpt_.params);
  memo_.emplace(s.raw, v);
  return v;
}

Bundle EncoderSource::slots(const synth::TaskInstance& inst) {
  Bundle out;
  out.reserve(inst.sentences.size());
  for (const auto& s : inst.sentences) out.push_back(encode(s));
  return out;
}

std::vector<Bundle> embed_instances(const std::vector<synth::TaskInstance>& instances, EmbeddingSource& source) {
  std::vector<Bundle> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) {
    Bundle b = source.slots(inst);
    for (const auto& v : b)
      if (v.size() != source.dim()) throw nn::DimMismatch("embedding for " + inst.instance_id);
    if (inst.kind == synth::TaskKind::kRstNode) {
      const std::size_t left = inst.left_count;
      if (left == 0 || left >= b.size()) throw ValidationError("RST instance " + inst.instance_id + " has an empty side");
      Vector<float> l = Vector<float>::Zero(source.dim());
      Vector<float> r = Vector<float>::Zero(source.dim());
      for (std::size_t i = 0; i < b.size(); ++i) (i < left ? l : r) += b[i];
      l /= static_cast<float>(left);
      r /= static_cast<float>(b.size() - left);
      b = {l, r};
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::string render_cache(const std::vector<const synth::Dataset*>& datasets, EmbeddingSource& source) {
  std::string out = "#dim " + std::to_string(source.dim()) + "\n";
  char buf[32];
  for (const auto* ds : datasets)
    for (synth::Split s : synth::kSplits)
      for (const auto& inst : ds->split(s)) {
        const auto b = source.slots(inst);
        for (std::size_t i = 0; i < b.size(); ++i) {
          out += inst.instance_id + "\t" + std::to_string(i) + "\t";
          for (long k = 0; k < b[i].size(); ++k) {
            std::snprintf(buf, sizeof buf, k ? " %.9g" : "%.9g", static_cast<double>(b[i](k)));
            out += buf;
          }
          out += '\n';
        }
      }
  return out;
}

}  // namespace disco::eval
