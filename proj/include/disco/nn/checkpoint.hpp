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

#ifndef DISCO_NN_CHECKPOINT_HPP_
#define DISCO_NN_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "disco/corpus/vocab.hpp"
#include "disco/nn/encoder.hpp"

namespace disco::nn {

inline constexpr std::string_view kCheckpointMagic = "DSEVCKP1";

class BadCheckpoint : public ValidationError {
 public:
  explicit BadCheckpoint(const std::string& what) : ValidationError("bad checkpoint: " + what) {}
};

struct Checkpoint {
  EncoderParams<float> params;
  corpus::Vocab vocab;
  std::uint64_t seed = 0;
  nlohmann::json meta = nlohmann::json::object();  // free-form training metadata
};

// Layout: magic, one JSON header line, then each tensor of params.tensors()
// as little-endian float32 in header order.
std::string serialize_checkpoint(Checkpoint& ckpt);
Checkpoint parse_checkpoint(std::string_view bytes);

void save_checkpoint(const std::filesystem::path& path, Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace disco::nn

#endif  // DISCO_NN_CHECKPOINT_HPP_
