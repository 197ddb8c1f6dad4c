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

#ifndef DISCO_NN_LOSSES_HPP_
#define DISCO_NN_LOSSES_HPP_

#include <string>
#include <vector>

#include "disco/nn/tensor.hpp"

namespace disco::nn {

class LabelOutOfRange : public ValidationError {
 public:
  LabelOutOfRange(long label, long classes)
      : ValidationError("label " + std::to_string(label) + " outside [0, " + std::to_string(classes) + ")") {}
};

class EmptyTarget : public ValidationError {
 public:
  EmptyTarget() : ValidationError("bag-of-words target is empty") {}
};

template <typename T>
Vector<T> log_softmax(const Vector<T>& logits) {
  const T m = logits.maxCoeff();
  const T lse = m + std::log((logits.array() - m).exp().sum());
  return (logits.array() - lse).matrix();
}

template <typename T>
Vector<T> softmax(const Vector<T>& logits) {
  return log_softmax(logits).array().exp().matrix();
}

template <typename T>
struct LossGrad {
  T loss = T(0);
  Vector<T> grad;  // w.r.t. logits
};

// -log softmax(logits)[label]; gradient softmax - onehot.
template <typename T>
LossGrad<T> softmax_xent(const Vector<T>& logits, long label) {
  if (label < 0 || label >= logits.size()) throw LabelOutOfRange(label, logits.size());
  const Vector<T> lp = log_softmax(logits);
  LossGrad<T> out{-lp(label), lp.array().exp().matrix()};
  out.grad(label) -= T(1);
  return out;
}

// Negative log-likelihood of a token bag (with multiplicity) under one
// softmax over the vocabulary. With `normalize`, divided by the bag size.
template <typename T>
LossGrad<T> bow_nll(const Vector<T>& logits, const std::vector<int>& bag, bool normalize = true) {
  if (bag.empty()) throw EmptyTarget();
  const Vector<T> lp = log_softmax(logits);
  const T n = static_cast<T>(bag.size());
  const T scale = normalize ? T(1) / n : T(1);
  LossGrad<T> out{T(0), lp.array().exp().matrix() * (n * scale)};
  for (int w : bag) {
    if (w < 0 || w >= logits.size()) throw LabelOutOfRange(w, logits.size());
    out.loss -= lp(w) * scale;
    out.grad(w) -= scale;
  }
  return out;
}

}  // namespace disco::nn

#endif  // DISCO_NN_LOSSES_HPP_
