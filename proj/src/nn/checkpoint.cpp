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

#include "disco/nn/checkpoint.hpp"

#include <bit>
#include <cstring>

#include "disco/common/io.hpp"

namespace disco::nn {

using nlohmann::json;

namespace {

std::uint32_t to_little(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  return (v >> 24) | ((v >> 8) & 0xff00u) | ((v << 8) & 0xff0000u) | (v << 24);
}

json dims_json(const EncoderDims& d) {
  return {{"vocab", d.vocab},           {"word_dim", d.word_dim},     {"hidden_dim", d.hidden_dim},
          {"head_hidden", d.head_hidden}, {"nl_classes", d.nl_classes}, {"sp_classes", d.sp_classes},
          {"pp_classes", d.pp_classes}};
}

EncoderDims dims_from(const json& j) {
  EncoderDims d;
  d.vocab = j.at("vocab").get<long>();
  d.word_dim = j.at("word_dim").get<long>();
  d.hidden_dim = j.at("hidden_dim").get<long>();
  d.head_hidden = j.at("head_hidden").get<long>();
  d.nl_classes = j.at("nl_classes").get<long>();
  d.sp_classes = j.at("sp_classes").get<long>();
  d.pp_classes = j.at("pp_classes").get<long>();
  return d;
}

}  // namespace

std::string serialize_checkpoint(Checkpoint& ckpt) {
  auto tensors = ckpt.params.tensors();
  json header;
  header["dims"] = dims_json(ckpt.params.dims);
  header["vocab_size"] = ckpt.vocab.size();
  header["vocab"] = ckpt.vocab.tokens();
  header["seed"] = ckpt.seed;
  json heads = json::array();
  for (Head h : kHeads) heads.push_back(std::string(head_name(h)));
  header["heads"] = heads;
  json shapes = json::array();
  for (const auto& t : tensors) shapes.push_back({{"name", t.name}, {"shape", {t.rows, t.cols}}});
  header["tensors"] = shapes;
  header["meta"] = ckpt.meta;

  std::string out(kCheckpointMagic);
  out += header.dump();
  out += '\n';
  for (const auto& t : tensors) {
    for (float f : t.data) {
      require_finite(Eigen::Matrix<float, 1, 1>(f), "checkpoint tensor " + t.name);
      const std::uint32_t le = to_little(std::bit_cast<std::uint32_t>(f));
      char buf[4];
      std::memcpy(buf, &le, 4);
      out.append(buf, 4);
    }
  }
  return out;
}

Checkpoint parse_checkpoint(std::string_view bytes) {
  if (bytes.substr(0, kCheckpointMagic.size()) != kCheckpointMagic) throw BadCheckpoint("missing magic");
  bytes.remove_prefix(kCheckpointMagic.size());
  const auto nl = bytes.find('\n');
  if (nl == std::string_view::npos) throw BadCheckpoint("unterminated header");
  json header;
  try {
    header = json::parse(bytes.substr(0, nl));
  } catch (const json::exception& e) {
    throw BadCheckpoint(std::string("header is not JSON: ") + e.what());
  }
  bytes.remove_prefix(nl + 1);

  Checkpoint ckpt;
  try {
    ckpt.vocab = corpus::Vocab(header.at("vocab").get<std::vector<std::string>>());
    ckpt.params = EncoderParams<float>(dims_from(header.at("dims")));
    ckpt.seed = header.at("seed").get<std::uint64_t>();
    ckpt.meta = header.value("meta", json::object());
    if (header.at("vocab_size").get<std::size_t>() != ckpt.vocab.size() ||
        static_cast<long>(ckpt.vocab.size()) != ckpt.params.dims.vocab)
      throw BadCheckpoint("vocabulary size disagrees with dims");

    auto tensors = ckpt.params.tensors();
    const auto& declared = header.at("tensors");
    if (declared.size() != tensors.size())
      throw BadCheckpoint("expected " + std::to_string(tensors.size()) + " tensors, header declares " +
                          std::to_string(declared.size()));
    for (std::size_t i = 0; i < tensors.size(); ++i) {
      auto& t = tensors[i];
      const auto& d = declared[i];
      const auto shape = d.at("shape").get<std::vector<long>>();
      if (d.at("name").get<std::string>() != t.name || shape.size() != 2 || shape[0] != t.rows || shape[1] != t.cols)
        throw BadCheckpoint("tensor " + std::to_string(i) + " declared as " + d.dump() + ", expected " + t.name +
                            " [" + std::to_string(t.rows) + ", " + std::to_string(t.cols) + "]");
      if (bytes.size() < 4 * t.data.size()) throw BadCheckpoint("truncated data for " + t.name);
      for (auto& f : t.data) {
        std::uint32_t le;
        std::memcpy(&le, bytes.data(), 4);
        f = std::bit_cast<float>(to_little(le));
        bytes.remove_prefix(4);
      }
    }
  } catch (const json::exception& e) {
    throw BadCheckpoint(std::string("header field: ") + e.what());
  }
  if (!bytes.empty()) throw BadCheckpoint(std::to_string(bytes.size()) + " trailing bytes");
  return ckpt;
}

void save_checkpoint(const std::filesystem::path& path, Checkpoint& ckpt) {
  write_file_atomic(path, serialize_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) { return parse_checkpoint(read_file(path)); }

}  // namespace disco::nn
