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

#include "disco/train/trainer.hpp"

#include <numeric>

#include <json.hpp>

#include "disco/nn/grad_check.hpp"

namespace disco::train {

std::optional<Loss> parse_loss(std::string_view name) {
  for (Loss l : kLosses)
    if (loss_name(l) == name) return l;
  return std::nullopt;
}

void LossConfig::validate() const {
  if (!on(Loss::kNsp)) throw ValidationError("the nsp loss cannot be disabled");
  for (Loss l : kLosses)
    if (!(weight(l) >= 0.0)) throw ValidationError("loss weight for " + std::string(loss_name(l)) + " must be >= 0");
  if (sp_cap < 1 || pp_cap < 1) throw ValidationError("position caps must be positive");
  if (batch_size < 1) throw ValidationError("batch size must be positive");
}

EncodedContext encode_context(const corpus::TrainingContext& ctx, const corpus::Vocab& vocab) {
  return EncodedContext{vocab.encode(ctx.target.tokens),
                        vocab.encode(ctx.prev.tokens),
                        vocab.encode(ctx.next.tokens),
                        vocab.encode(ctx.section_title),
                        vocab.encode(ctx.doc_title),
                        ctx.nesting_level,
                        ctx.sent_pos,
                        ctx.para_pos};
}

std::vector<EncodedContext> encode_contexts(const std::vector<corpus::TrainingContext>& ctxs, const corpus::Vocab& vocab) {
  std::vector<EncodedContext> out;
  out.reserve(ctxs.size());
  for (const auto& c : ctxs) out.push_back(encode_context(c, vocab));
  return out;
}

std::string TrainLog::to_jsonl() const {
  std::string out;
  for (const auto& r : records) {
    out += nlohmann::json{{"step", r.step}, {"head", r.head}, {"loss", r.loss}}.dump();
    out += '\n';
  }
  return out;
}

std::vector<double> TrainLog::series(const std::string& head) const {
  std::vector<double> out;
  for (const auto& r : records)
    if (r.head == head) out.push_back(r.loss);
  return out;
}

double TrainLog::window_mean(const std::string& head, std::size_t n, bool from_end) const {
  const auto s = series(head);
  if (s.empty()) throw ValidationError("no log entries for head '" + head + "'");
  n = std::min(n, s.size());
  const auto begin = from_end ? s.end() - static_cast<long>(n) : s.begin();
  return std::accumulate(begin, begin + static_cast<long>(n), 0.0) / static_cast<double>(n);
}

nn::EncoderParams<float> make_encoder(const nn::Matrix<float>& embedding, long hidden_dim, const LossConfig& cfg,
                                      long head_hidden) {
  nn::EncoderDims d;
  d.vocab = embedding.rows();
  d.word_dim = embedding.cols();
  d.hidden_dim = hidden_dim;
  d.head_hidden = head_hidden;
  d.sp_classes = cfg.sp_cap;
  d.pp_classes = cfg.pp_cap;
  nn::EncoderParams<float> p(d);
  Rng rng = derive_rng(cfg.seed, "encoder-init");
  p.init(rng);
  p.embedding = embedding;
  return p;
}

TrainLog train_epoch(const std::vector<EncodedContext>& contexts, const LossConfig& cfg, nn::EncoderParams<float>& params) {
  cfg.validate();
  if (contexts.empty()) throw corpus::EmptyCorpus();

  std::vector<std::size_t> order(contexts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = derive_rng(cfg.seed, "train-order");
  shuffle(std::span(order), rng);

  auto tensors = params.tensors();
  auto state = nn::adam_init(tensors, cfg.adam);
  nn::EncoderParams<float> grad = nn::zeros_like(params);
  auto grad_tensors = grad.tensors();

  TrainLog log;
  std::vector<EncodedContext> batch;
  const auto bs = static_cast<std::size_t>(cfg.batch_size);
  for (std::size_t start = 0; start < order.size(); start += bs) {
    batch.clear();
    for (std::size_t i = start; i < std::min(order.size(), start + bs); ++i) batch.push_back(contexts[order[i]]);
    nn::zero(grad_tensors);
    const auto losses = multitask_loss<float>(batch, params, cfg, &grad);
    const long step = log.steps + 1;
    if (!std::isfinite(losses.total)) throw nn::NonFiniteLoss("at step " + std::to_string(step));
    nn::adam_step(tensors, grad_tensors, state);

    for (Loss l : kLosses)
      if (cfg.on(l))
        log.records.push_back({step, std::string(loss_name(l)), losses.per_loss[static_cast<std::size_t>(l)]});
    log.records.push_back({step, "total", losses.total});
    log.sdt_skipped += losses.sdt_skipped;
    log.steps = step;
  }
  return log;
}

}  // namespace disco::train
