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

#ifndef DISCO_EVAL_EMBEDDING_SOURCE_HPP_
#define DISCO_EVAL_EMBEDDING_SOURCE_HPP_

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "disco/nn/checkpoint.hpp"
#include "disco/synth/task_instance.hpp"

namespace disco::eval {

using nn::Vector;
using Bundle = std::vector<Vector<float>>;  // one vector per instance slot

class MissingEmbedding : public ValidationError {
 public:
  explicit MissingEmbedding(const std::string& id) : ValidationError("no embedding for instance " + id), id_(id) {}
  const std::string& instance_id() const { return id_; }

 private:
  std::string id_;
};

class EmbeddingSource {
 public:
  virtual ~EmbeddingSource() = default;
  virtual long dim() const = 0;
  // One vector per sentence (or EDU) of the instance, in slot order.
  virtual Bundle slots(const synth::TaskInstance& inst) = 0;
};

// Embedding cache: "#dim d" header, then "instance_id\tslot\tv1 ... vd" rows
// with 0-based slots (RST: left EDUs, then right EDUs).
class EmbeddingCache : public EmbeddingSource {
 public:
  explicit EmbeddingCache(long dim) : dim_(dim) {}
  long dim() const override { return dim_; }
  Bundle slots(const synth::TaskInstance& inst) override;

  void put(const std::string& instance_id, std::size_t slot, Vector<float> v);
  std::size_t size() const { return rows_; }

 private:
  long dim_;
  std::size_t rows_ = 0;
  std::unordered_map<std::string, std::vector<Vector<float>>> by_id_;
};

EmbeddingCache parse_cache(std::string_view text);
EmbeddingCache read_cache(const std::filesystem::path& path);

// Sentences are embedded by a trained encoder; tokens outside its vocabulary
// map to the unknown token.
class EncoderSource : public EmbeddingSource {
 public:
  explicit EncoderSource(nn::Checkpoint ckpt) : ckpt_(std::move(ckpt)) {}
  long dim() const override { return ckpt_.params.dims.embedding_dim(); }
  Bundle slots(const synth::TaskInstance& inst) override;
  Vector<float> encode(const corpus::Sentence& s);
  const nn::Checkpoint& checkpoint() const { return ckpt_; }

 private:
  nn::Checkpoint ckpt_;
  std::unordered_map<std::string, Vector<float>> memo_;
};

// Per-instance vectors ready for feature construction. RST nodes are reduced
// to [mean of left EDUs, mean of right EDUs]; other kinds keep all slots.
std::vector<Bundle> embed_instances(const std::vector<synth::TaskInstance>& instances, EmbeddingSource& source);

// Cache text covering every instance of the datasets.
std::string render_cache(const std::vector<const synth::Dataset*>& datasets, EmbeddingSource& source);

}  // namespace disco::eval

#endif  // DISCO_EVAL_EMBEDDING_SOURCE_HPP_
