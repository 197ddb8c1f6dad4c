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

#ifndef DISCO_TRAIN_TRAINER_HPP_
#define DISCO_TRAIN_TRAINER_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "disco/nn/checkpoint.hpp"
#include "disco/train/objectives.hpp"

namespace disco::train {

struct LogRecord {
  long step = 0;
  std::string head;  // loss name or "total"
  double loss = 0.0;
  bool operator==(const LogRecord&) const = default;
};

struct TrainLog {
  std::vector<LogRecord> records;
  long steps = 0;
  long sdt_skipped = 0;

  // JSON Lines: {"step": n, "head": "...", "loss": x}
  std::string to_jsonl() const;
  std::vector<double> series(const std::string& head) const;
  // Mean of the first (from_end = false) or last n values of a head's series.
  double window_mean(const std::string& head, std::size_t n, bool from_end) const;
};

// Encoder with seeded recurrent and head weights around a given embedding
// table (vocab x word_dim).
nn::EncoderParams<float> make_encoder(const nn::Matrix<float>& embedding, long hidden_dim, const LossConfig& cfg,
                                      long head_hidden = 0);

// One pass over the contexts in an order shuffled with cfg.seed; one Adam
// step per batch. Throws corpus::EmptyCorpus and nn::NonFiniteLoss.
TrainLog train_epoch(const std::vector<EncodedContext>& contexts, const LossConfig& cfg, nn::EncoderParams<float>& params);

}  // namespace disco::train

#endif  // DISCO_TRAIN_TRAINER_HPP_
