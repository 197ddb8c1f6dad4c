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

#ifndef DISCO_NN_ENCODER_HPP_
#define DISCO_NN_ENCODER_HPP_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "disco/nn/feedforward.hpp"
#include "disco/nn/gru.hpp"
#include "disco/nn/tensor.hpp"
#include "disco/nn/tensor_ref.hpp"

namespace disco::nn {

class EmptySequence : public ValidationError {
 public:
  EmptySequence() : ValidationError("cannot encode an empty token sequence") {}
};

class IndexOutOfVocab : public ValidationError {
 public:
  IndexOutOfVocab(long index, long vocab)
      : ValidationError("token index " + std::to_string(index) + " outside vocabulary of size " + std::to_string(vocab)) {}
};

struct EncoderDims {
  long vocab = 0;
  long word_dim = 32;
  long hidden_dim = 32;
  long head_hidden = 0;  // 0: same as the sentence embedding (2 * hidden_dim)
  long nl_classes = 7;
  long sp_classes = 32;
  long pp_classes = 64;

  long embedding_dim() const { return 2 * hidden_dim; }
  long head_width() const { return head_hidden > 0 ? head_hidden : embedding_dim(); }
  bool operator==(const EncoderDims&) const = default;
};

enum class Head { kNspPrev, kNspNext, kNestingLevel, kSentencePos, kParagraphPos, kSectionTitle, kDocumentTitle };

inline constexpr std::array<Head, 7> kHeads = {Head::kNspPrev,     Head::kNspNext,      Head::kNestingLevel,
                                               Head::kSentencePos, Head::kParagraphPos, Head::kSectionTitle,
                                               Head::kDocumentTitle};

constexpr std::string_view head_name(Head h) {
  switch (h) {
    case Head::kNspPrev: return "nsp_prev";
    case Head::kNspNext: return "nsp_next";
    case Head::kNestingLevel: return "nl";
    case Head::kSentencePos: return "spp_sentence";
    case Head::kParagraphPos: return "spp_paragraph";
    case Head::kSectionTitle: return "sdt_section";
    case Head::kDocumentTitle: return "sdt_document";
  }
  return "?";
}

inline long head_classes(const EncoderDims& d, Head h) {
  switch (h) {
    case Head::kNestingLevel: return d.nl_classes;
    case Head::kSentencePos: return d.sp_classes;
    case Head::kParagraphPos: return d.pp_classes;
    default: return d.vocab;
  }
}

template <typename T>
struct EncoderParams {
  EncoderDims dims;
  Matrix<T> embedding;  // vocab x word_dim
  GruParams<T> forward, backward;
  std::array<FeedForward<T>, kHeads.size()> heads;

  EncoderParams() = default;
  explicit EncoderParams(const EncoderDims& d)
      : dims(d),
        embedding(Matrix<T>::Zero(d.vocab, d.word_dim)),
        forward(d.word_dim, d.hidden_dim),
        backward(d.word_dim, d.hidden_dim) {
    if (d.vocab <= 0 || d.word_dim <= 0 || d.hidden_dim <= 0)
      throw ValidationError("encoder dimensions must be positive");
    for (Head h : kHeads) head(h) = FeedForward<T>(d.embedding_dim(), d.head_width(), head_classes(d, h));
  }

  FeedForward<T>& head(Head h) { return heads[static_cast<std::size_t>(h)]; }
  const FeedForward<T>& head(Head h) const { return heads[static_cast<std::size_t>(h)]; }

  // Recurrent weights and heads only; the embedding table is filled by the
  // caller (pretrained or random vectors).
  void init(Rng& rng) {
    forward.init(rng);
    backward.init(rng);
    for (auto& h : heads) h.init(rng);
  }

  // Fixed order; also the checkpoint blob order.
  std::vector<TensorRef<T>> tensors() {
    std::vector<TensorRef<T>> out;
    out.push_back(ref<T>("embedding", embedding));
    forward.append_tensors("gru_forward", out);
    backward.append_tensors("gru_backward", out);
    for (Head h : kHeads) head(h).append_tensors("head." + std::string(head_name(h)), out);
    return out;
  }

  template <typename U>
  EncoderParams<U> cast() const {
    EncoderParams<U> o;
    o.dims = dims;
    o.embedding = embedding.template cast<U>();
    o.forward = forward.template cast<U>();
    o.backward = backward.template cast<U>();
    for (std::size_t i = 0; i < heads.size(); ++i) o.heads[i] = heads[i].template cast<U>();
    return o;
  }
};

// Zero-valued container with the same shapes, used for gradients.
template <typename T>
EncoderParams<T> zeros_like(const EncoderParams<T>& p) {
  return EncoderParams<T>(p.dims);
}

template <typename T>
struct EncodeCache {
  std::vector<int> tokens;
  std::vector<GruStep<T>> fwd;  // fwd[t] consumed tokens[t]
  std::vector<GruStep<T>> bwd;  // bwd[t] consumed tokens[t], run right to left
};

// Mean over positions of [forward_t; backward_t].
template <typename T>
Vector<T> bigru_encode(const std::vector<int>& tokens, const EncoderParams<T>& p, EncodeCache<T>* cache = nullptr) {
  if (tokens.empty()) throw EmptySequence();
  for (int t : tokens)
    if (t < 0 || t >= p.embedding.rows()) throw IndexOutOfVocab(t, p.embedding.rows());
  const long H = p.forward.hidden_dim();
  const std::size_t n = tokens.size();
  if (cache) {
    cache->tokens = tokens;
    cache->fwd.assign(n, {});
    cache->bwd.assign(n, {});
  }
  Vector<T> sum = Vector<T>::Zero(2 * H);
  Vector<T> h = Vector<T>::Zero(H);
  for (std::size_t t = 0; t < n; ++t) {
    const Vector<T> x = p.embedding.row(tokens[t]).transpose();
    h = gru_cell(x, h, p.forward, cache ? &cache->fwd[t] : nullptr);
    sum.head(H) += h;
  }
  h.setZero();
  for (std::size_t t = n; t-- > 0;) {
    const Vector<T> x = p.embedding.row(tokens[t]).transpose();
    h = gru_cell(x, h, p.backward, cache ? &cache->bwd[t] : nullptr);
    sum.tail(H) += h;
  }
  return sum / static_cast<T>(n);
}

// Accumulates into grad.embedding and the two GRUs given dL/d(output).
template <typename T>
void bigru_backward(const EncodeCache<T>& c, const Vector<T>& d_out, const EncoderParams<T>& p, EncoderParams<T>& grad) {
  const long H = p.forward.hidden_dim();
  const std::size_t n = c.tokens.size();
  const Vector<T> d_fwd = d_out.head(H) / static_cast<T>(n);
  const Vector<T> d_bwd = d_out.tail(H) / static_cast<T>(n);
  Vector<T> dx, dh_prev;

  Vector<T> dh = Vector<T>::Zero(H);
  for (std::size_t t = n; t-- > 0;) {
    dh += d_fwd;
    gru_cell_backward(c.fwd[t], dh, p.forward, grad.forward, dx, dh_prev);
    grad.embedding.row(c.tokens[t]) += dx.transpose();
    dh = dh_prev;
  }
  dh.setZero();
  for (std::size_t t = 0; t < n; ++t) {
    dh += d_bwd;
    gru_cell_backward(c.bwd[t], dh, p.backward, grad.backward, dx, dh_prev);
    grad.embedding.row(c.tokens[t]) += dx.transpose();
    dh = dh_prev;
  }
}

}  // namespace disco::nn

#endif  // DISCO_NN_ENCODER_HPP_
