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

#ifndef DISCO_TRAIN_OBJECTIVES_HPP_
#define DISCO_TRAIN_OBJECTIVES_HPP_

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "disco/corpus/contexts.hpp"
#include "disco/corpus/vocab.hpp"
#include "disco/nn/adam.hpp"
#include "disco/nn/encoder.hpp"
#include "disco/nn/losses.hpp"

namespace disco::train {

enum class Loss { kNsp, kNl, kSpp, kSdt };
inline constexpr std::array<Loss, 4> kLosses = {Loss::kNsp, Loss::kNl, Loss::kSpp, Loss::kSdt};

constexpr std::string_view loss_name(Loss l) {
  switch (l) {
    case Loss::kNsp: return "nsp";
    case Loss::kNl: return "nl";
    case Loss::kSpp: return "spp";
    case Loss::kSdt: return "sdt";
  }
  return "?";
}

std::optional<Loss> parse_loss(std::string_view name);

class LevelOutOfRange : public ValidationError {
 public:
  LevelOutOfRange(int level, long classes)
      : ValidationError("nesting level " + std::to_string(level) + " outside [1, " + std::to_string(classes) + "]") {}
};

class BothTitlesEmpty : public ValidationError {
 public:
  BothTitlesEmpty() : ValidationError("section and document titles are both empty") {}
};

struct LossConfig {
  std::array<bool, 4> enabled{true, false, false, false};
  std::array<double, 4> weights{1.0, 1.0, 1.0, 1.0};
  int sp_cap = 32;
  int pp_cap = 64;
  int batch_size = 64;
  std::uint64_t seed = 13;
  bool normalize_bow = true;
  nn::AdamConfig adam;

  bool on(Loss l) const { return enabled[static_cast<std::size_t>(l)]; }
  double weight(Loss l) const { return weights[static_cast<std::size_t>(l)]; }
  // Throws ValidationError; NSP may not be disabled.
  void validate() const;
};

// A training context mapped to vocabulary indices.
struct EncodedContext {
  std::vector<int> target, prev, next, section_title, doc_title;
  int nesting_level = 1;
  int sent_pos = 0;
  int para_pos = 0;
};

EncodedContext encode_context(const corpus::TrainingContext& ctx, const corpus::Vocab& vocab);
std::vector<EncodedContext> encode_contexts(const std::vector<corpus::TrainingContext>& ctxs, const corpus::Vocab& vocab);

inline int clamp_bucket(int position, int cap) { return std::clamp(position, 0, cap - 1); }

template <typename T>
struct StepLosses {
  T total = T(0);
  std::array<T, 4> per_loss{};     // mean over contributing examples
  std::array<int, 4> examples{};   // contributing examples per loss
  int sdt_skipped = 0;             // examples with no title at all
};

// Multitask loss over a batch. Each enabled loss is averaged over the
// examples it applies to; total = sum of weight * average. When `grad` is
// given, gradients of `total` are accumulated into it. With strict_titles,
// an example with neither title raises BothTitlesEmpty instead of being
// skipped for SDT.
template <typename T>
StepLosses<T> multitask_loss(std::span<const EncodedContext> batch, const nn::EncoderParams<T>& p,
                             const LossConfig& cfg, nn::EncoderParams<T>* grad, bool strict_titles = false) {
  using nn::Batch;
  using nn::Head;
  using nn::Vector;
  StepLosses<T> out;
  const auto B = static_cast<Eigen::Index>(batch.size());
  if (B == 0) return out;
  const auto& d = p.dims;
  if (cfg.on(Loss::kSpp) && (d.sp_classes != cfg.sp_cap || d.pp_classes != cfg.pp_cap))
    throw ValidationError("position caps do not match the encoder heads");

  std::vector<nn::EncodeCache<T>> caches(batch.size());
  Batch<T> emb(d.embedding_dim(), B);
  for (Eigen::Index j = 0; j < B; ++j)
    emb.col(j) = nn::bigru_encode(batch[j].target, p, grad ? &caches[j] : nullptr);
  Batch<T> d_emb = Batch<T>::Zero(emb.rows(), B);

  // Per-example loss and logit gradient for one head; nullopt when the
  // example does not take part.
  using Term = std::function<std::optional<nn::LossGrad<T>>(const EncodedContext&, const Vector<T>&)>;
  auto run_head = [&](Head h, const Term& term, std::vector<T>& per_example, std::vector<bool>& present) {
    nn::FeedForwardCache<T> fc;
    const Batch<T> logits = nn::feedforward_apply(p.head(h), emb, grad ? &fc : nullptr);
    Batch<T> dlogits;
    if (grad) dlogits = Batch<T>::Zero(logits.rows(), B);
    for (Eigen::Index j = 0; j < B; ++j) {
      auto r = term(batch[j], logits.col(j));
      if (!r) continue;
      per_example[j] += r->loss;
      present[j] = true;
      if (grad) dlogits.col(j) = r->grad;
    }
    return std::make_pair(std::move(fc), std::move(dlogits));
  };

  auto finish = [&](Loss which, std::vector<std::pair<Head, std::pair<nn::FeedForwardCache<T>, Batch<T>>>>& parts,
                    const std::vector<T>& per_example, const std::vector<bool>& present) {
    int n = 0;
    T sum = T(0);
    for (Eigen::Index j = 0; j < B; ++j)
      if (present[j]) {
        ++n;
        sum += per_example[j];
      }
    const auto i = static_cast<std::size_t>(which);
    out.examples[i] = n;
    if (n == 0) return;
    out.per_loss[i] = sum / static_cast<T>(n);
    out.total += static_cast<T>(cfg.weight(which)) * out.per_loss[i];
    if (!grad) return;
    const T scale = static_cast<T>(cfg.weight(which)) / static_cast<T>(n);
    for (auto& [h, cache_and_grad] : parts) {
      auto& [fc, dlogits] = cache_and_grad;
      dlogits *= scale;
      d_emb += nn::feedforward_backward(p.head(h), fc, dlogits, grad->head(h));
    }
  };

  const bool norm = cfg.normalize_bow;

  for (Loss which : kLosses) {
    if (!cfg.on(which)) continue;
    std::vector<T> per_example(batch.size(), T(0));
    std::vector<bool> present(batch.size(), false);
    std::vector<std::pair<Head, std::pair<nn::FeedForwardCache<T>, Batch<T>>>> parts;
    auto add = [&](Head h, const Term& term) { parts.emplace_back(h, run_head(h, term, per_example, present)); };
    switch (which) {
      case Loss::kNsp:
        add(Head::kNspPrev, [norm](const EncodedContext& c, const Vector<T>& l) {
          return std::optional(nn::bow_nll<T>(l, c.prev, norm));
        });
        add(Head::kNspNext, [norm](const EncodedContext& c, const Vector<T>& l) {
          return std::optional(nn::bow_nll<T>(l, c.next, norm));
        });
        break;
      case Loss::kNl:
        add(Head::kNestingLevel, [&d](const EncodedContext& c, const Vector<T>& l) {
          if (c.nesting_level < 1 || c.nesting_level > d.nl_classes) throw LevelOutOfRange(c.nesting_level, d.nl_classes);
          return std::optional(nn::softmax_xent<T>(l, c.nesting_level - 1));
        });
        break;
      case Loss::kSpp:
        add(Head::kSentencePos, [&cfg](const EncodedContext& c, const Vector<T>& l) {
          return std::optional(nn::softmax_xent<T>(l, clamp_bucket(c.sent_pos, cfg.sp_cap)));
        });
        add(Head::kParagraphPos, [&cfg](const EncodedContext& c, const Vector<T>& l) {
          return std::optional(nn::softmax_xent<T>(l, clamp_bucket(c.para_pos, cfg.pp_cap)));
        });
        break;
      case Loss::kSdt:
        for (const auto& c : batch) {
          if (!c.section_title.empty() || !c.doc_title.empty()) continue;
          if (strict_titles) throw BothTitlesEmpty();
          ++out.sdt_skipped;
        }
        add(Head::kSectionTitle, [norm](const EncodedContext& c, const Vector<T>& l) -> std::optional<nn::LossGrad<T>> {
          if (c.section_title.empty()) return std::nullopt;
          return nn::bow_nll<T>(l, c.section_title, norm);
        });
        add(Head::kDocumentTitle, [norm](const EncodedContext& c, const Vector<T>& l) -> std::optional<nn::LossGrad<T>> {
          if (c.doc_title.empty()) return std::nullopt;
          return nn::bow_nll<T>(l, c.doc_title, norm);
        });
        break;
    }
    finish(which, parts, per_example, present);
  }

  if (grad)
    for (Eigen::Index j = 0; j < B; ++j) nn::bigru_backward<T>(caches[j], d_emb.col(j), p, *grad);
  return out;
}

// Single-example objectives; gradients accumulate into grad when given.
template <typename T>
T single_loss(Loss which, const EncodedContext& ctx, const nn::EncoderParams<T>& p, const LossConfig& base,
              nn::EncoderParams<T>* grad = nullptr) {
  LossConfig cfg = base;
  cfg.enabled = {false, false, false, false};
  cfg.enabled[static_cast<std::size_t>(which)] = true;
  cfg.weights = {1.0, 1.0, 1.0, 1.0};
  return multitask_loss<T>(std::span(&ctx, 1), p, cfg, grad, true).total;
}

}  // namespace disco::train

#endif  // DISCO_TRAIN_OBJECTIVES_HPP_
